#pragma once

#include <stdexcept>
#include <string>

namespace cvk {

enum class ErrorCode {
  // malformed or invalid input
  Parse,
  NotSymmetric,
  LabelOutOfRange,
  InvalidDiagonal,
  RankMismatch,
  NotCartan,
  NotNormalized,
  NotProperlyConvex,
  EmptyInterior,
  RedundantFacet,
  ConditionCViolated,
  AngleNotSubmultiple,
  NotCoxeter,
  NotAVertex,
  InvalidConfig,
  // refusals: the input is valid but the operation does not apply
  PreconditionUnmet,
  NotSimple,
  NotLoxodromic,
  NotNegativeType,
  LinkNotPerfect,
  NotTruncable,
  ConeException,
  FacetsCollide,
  NoProximalFound,
  PointOutside,
  DegenerateChord,
  CapExceeded,
  // numerical integrity
  EigenFailure,
  DegenerateLattice,
  DedupAmbiguity,
  OverlapDetected,
  PostconditionFailed,
};

const char* to_string(ErrorCode code);

// Process exit status used by the command line tool.
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cvk
