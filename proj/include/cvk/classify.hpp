#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cvk/cartan.hpp"
#include "cvk/config.hpp"
#include "cvk/coxsys.hpp"
#include "cvk/polytope.hpp"

namespace cvk {

enum class VertexKind { Elliptic, Parabolic, Loxodromic, Imperfect };
const char* to_string(VertexKind k);

struct VertexReport {
  int vertex = 0;
  Subset facets;  // S_p
  VertexKind kind = VertexKind::Imperfect;
  CartanType link_type;
  int link_rank = 0;
  bool simple = false;
  // Perfection of the link, decided from the Cartan matrices of its vertex
  // links; edges through p whose W_e is infinite, decided from W_P.
  bool link_perfect = false;
  std::vector<Subset> infinite_edges;
  std::string detail;
};

VertexReport classify_vertex(const MirrorPolytope& p, int vertex, const Tolerances& tol = {});

enum class Perfection { Perfect, QuasiPerfect, TwoPerfect, NotTwoPerfect };
const char* to_string(Perfection p);

struct PerfectionReport {
  Perfection level = Perfection::NotTwoPerfect;
  std::vector<VertexReport> vertices;
  std::vector<Subset> infinite_edges;
  std::vector<int> parabolic_vertices;
  std::vector<int> loxodromic_vertices;
  bool two_perfect() const { return level != Perfection::NotTwoPerfect; }
  bool quasi_perfect() const { return level == Perfection::Perfect || level == Perfection::QuasiPerfect; }
};

// 2-perfection is decided twice, from vertex links and from edge groups;
// disagreement raises PostconditionFailed.
PerfectionReport perfection(const MirrorPolytope& p, const Tolerances& tol = {});

enum class PolytopeKind { Elliptic, Parabolic, Loxodromic, Decomposable };
const char* to_string(PolytopeKind k);

struct PolytopeClass {
  PolytopeKind kind = PolytopeKind::Decomposable;
  CartanType type;
  int rank = 0;
  std::optional<CoxeterSystem> coxeter;
  bool w_irreducible = false;
  std::optional<DiagramKind> w_kind;  // when W_P is irreducible
  std::string w_name;
  // Set when P is a cone over its link at cone_vertex.
  std::optional<int> cone_vertex;
  std::optional<PolytopeKind> base_kind;
  std::string description;
};

PolytopeClass polytope_class(const MirrorPolytope& p, const Tolerances& tol = {});

struct IrreducibilityReport {
  bool irreducible = false;
  bool strongly_irreducible = false;
};
IrreducibilityReport is_irreducible_rep(const MirrorPolytope& p, const Tolerances& tol = {});

enum class Tri { True, False, NotApplicable, Unknown };
const char* to_string(Tri t);

struct Verdict {
  Tri value = Tri::NotApplicable;
  std::string anchor;  // the result the verdict rests on
  std::string witness;
};

struct ActionReport {
  Verdict geometrically_finite, finite_covolume, convex_cocompact, cocompact;
  std::string reason;  // why the verdicts do not apply
};

ActionReport action_classification(const MirrorPolytope& p, const Tolerances& tol = {});

struct DegenerateReport {
  int case_number = 0;  // 1..4, 0 when no case applies
  std::string description;
};
DegenerateReport degenerate_classification(const MirrorPolytope& p, const Tolerances& tol = {});

// Basis of the space of symmetric B with g^T B g = B for every generator g.
std::vector<Mat> invariant_quadratic_forms(const std::vector<Mat>& generators, double eps = 1e-9);

struct Signature {
  int positive = 0, negative = 0, zero = 0;
};
Signature signature(const Mat& form, double eps = 1e-9);

enum class ZariskiVerdict { ConjugateSO, FullSL, Degenerate, Inconclusive };
const char* to_string(ZariskiVerdict z);

struct ZariskiReport {
  ZariskiVerdict verdict = ZariskiVerdict::Inconclusive;
  int form_space_dim = 0;
  std::optional<Mat> form;  // signature (d, 1) witness
  double residual = 0.0;    // max_g |g^T B g - B| / |B|
  bool negative_inside = false;  // the form is negative on interior samples of P
  std::string description;
};

ZariskiReport zariski_closure(const MirrorPolytope& p, const Tolerances& tol = {}, std::uint64_t seed = 1);

struct StrictConvexityReport {
  bool strictly_convex = false;
  bool c1_boundary = false;
  bool gromov_hyperbolic = false;
  bool quasi_perfect = false;
  std::vector<Subset> peripherals;
  RelHypCheck check;
  std::string reason;
};

// Requires P loxodromic (NotLoxodromic otherwise).
StrictConvexityReport strict_convexity(const MirrorPolytope& p, const Tolerances& tol = {});
// Same decision from the combinatorial data alone.
StrictConvexityReport strict_convexity(const CoxeterSystem& w, Perfection level, const std::vector<Subset>& peripherals,
                                       double eps = 1e-9);

// Whether Gamma_P preserves some strictly convex open set, decided by
// relative hyperbolicity of W_P with respect to its parabolic vertex groups
// and cross-checked on the truncated polytope. Unknown when a loxodromic
// vertex is not simple.
struct StrictExistenceReport {
  Tri verdict = Tri::NotApplicable;
  std::optional<bool> truncated_strictly_convex;
  std::string reason;
};
StrictExistenceReport strictly_convex_invariant_set(const MirrorPolytope& p, const Tolerances& tol = {});

struct ExtremesReport {
  bool finite_covolume = false;
  bool unique_invariant_domain = false;  // Omega_min = Omega_max
  std::vector<int> loxodromic_vertices;
  std::string description;
};
ExtremesReport invariant_convex_extremes(const MirrorPolytope& p, const Tolerances& tol = {});

}  // namespace cvk
