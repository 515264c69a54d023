#include "cvk/errors.hpp"

namespace cvk {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::InvalidDiagonal: return "InvalidDiagonal";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::NotCartan: return "NotCartan";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotProperlyConvex: return "NotProperlyConvex";
    case ErrorCode::EmptyInterior: return "EmptyInterior";
    case ErrorCode::RedundantFacet: return "RedundantFacet";
    case ErrorCode::ConditionCViolated: return "ConditionCViolated";
    case ErrorCode::AngleNotSubmultiple: return "AngleNotSubmultiple";
    case ErrorCode::NotCoxeter: return "NotCoxeter";
    case ErrorCode::NotAVertex: return "NotAVertex";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::PreconditionUnmet: return "PreconditionUnmet";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::NotLoxodromic: return "NotLoxodromic";
    case ErrorCode::NotNegativeType: return "NotNegativeType";
    case ErrorCode::LinkNotPerfect: return "LinkNotPerfect";
    case ErrorCode::NotTruncable: return "NotTruncable";
    case ErrorCode::ConeException: return "ConeException";
    case ErrorCode::FacetsCollide: return "FacetsCollide";
    case ErrorCode::NoProximalFound: return "NoProximalFound";
    case ErrorCode::PointOutside: return "PointOutside";
    case ErrorCode::DegenerateChord: return "DegenerateChord";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::EigenFailure: return "EigenFailure";
    case ErrorCode::DegenerateLattice: return "DegenerateLattice";
    case ErrorCode::DedupAmbiguity: return "DedupAmbiguity";
    case ErrorCode::OverlapDetected: return "OverlapDetected";
    case ErrorCode::PostconditionFailed: return "PostconditionFailed";
  }
  return "Unknown";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::EigenFailure:
    case ErrorCode::DegenerateLattice:
    case ErrorCode::DedupAmbiguity:
    case ErrorCode::OverlapDetected:
    case ErrorCode::PostconditionFailed:
      return 4;
    case ErrorCode::PreconditionUnmet:
    case ErrorCode::NotSimple:
    case ErrorCode::NotLoxodromic:
    case ErrorCode::NotNegativeType:
    case ErrorCode::LinkNotPerfect:
    case ErrorCode::NotTruncable:
    case ErrorCode::ConeException:
    case ErrorCode::FacetsCollide:
    case ErrorCode::NoProximalFound:
    case ErrorCode::PointOutside:
    case ErrorCode::DegenerateChord:
    case ErrorCode::CapExceeded:
      return 3;
    default:
      return 2;
  }
}

}  // namespace cvk
