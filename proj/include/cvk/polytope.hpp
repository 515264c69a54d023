#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cvk/config.hpp"
#include "cvk/coxsys.hpp"
#include "cvk/linalg.hpp"

namespace cvk {

// A facet is the half-space alpha <= 0 together with the polar v of its
// reflection x -> x - alpha(x) v. Normalized so that alpha(v) = 2.
struct Facet {
  std::string name;
  Vec alpha;
  Vec polar;
};

struct Face {
  int dim = 0;
  std::vector<int> vertices;  // indices into FaceLattice::vertices
  Subset facets;              // every facet containing the face
};

struct FaceLattice {
  std::vector<Vec> vertices;           // unit representatives in R^{d+1}
  std::vector<Subset> vertex_facets;   // S_p for each vertex
  std::vector<Face> faces;             // dimensions 0..d; the empty face is omitted

  std::vector<int> faces_of_dim(int k) const;
  // Vertex index whose ray is closest to x, if within tol.
  std::optional<int> find_vertex(const Vec& x, double tol = 1e-7) const;
};

// Projective polytope P = { x : alpha_s(x) <= 0 for all s } in S^d with one
// reflection per facet. Immutable once built.
class MirrorPolytope {
 public:
  // Validates normalization, proper convexity, nonempty interior and absence
  // of redundant facets. Facet names default to "1", "2", ...
  static MirrorPolytope build(int dim, std::vector<Facet> facets, double eps = 1e-9);

  int dim() const { return dim_; }
  int facet_count() const { return static_cast<int>(facets_.size()); }
  const Facet& facet(int s) const { return facets_[static_cast<std::size_t>(s)]; }
  const std::vector<Facet>& facets() const { return facets_; }
  std::vector<std::string> facet_names() const;

  Mat alphas() const;  // one row per facet
  Mat polars() const;  // one column per facet
  Mat reflection(int s) const;
  Mat cartan_matrix() const;  // A_st = alpha_s(v_t)

  const FaceLattice& face_lattice() const { return *lattice_; }
  // Barycenter of the unit vertex rays; strictly inside P.
  const Vec& interior_point() const { return interior_; }
  double eps() const { return eps_; }

 private:
  MirrorPolytope() = default;
  int dim_ = 0;
  double eps_ = 1e-9;
  std::vector<Facet> facets_;
  std::shared_ptr<const FaceLattice> lattice_;
  Vec interior_;
};

// Angle data for a pair of adjacent facets. In dimension 1 the two facets
// count as adjacent (they meet in the empty face).
struct RidgeAngle {
  int s = 0, t = 0;
  double a_st = 0.0, a_ts = 0.0;
  double product = 0.0;
  Label label = kInfinity;  // kInfinity for products >= 4
  std::string problem;      // empty when both conditions hold
};

struct CoxeterCheck {
  std::vector<RidgeAngle> ridges;
  bool sign_condition = true;   // a_st <= 0 and a_st = 0 iff a_ts = 0
  bool angle_condition = true;  // product is 4 cos^2(pi/m) or >= 4
  bool ok() const { return sign_condition && angle_condition; }
};

CoxeterCheck check_coxeter_conditions(const MirrorPolytope& p, const Tolerances& tol = {});

// W_P: m_st from the ridge angle on adjacent pairs, infinity otherwise.
// Throws ConditionCViolated or AngleNotSubmultiple.
CoxeterSystem coxeter_system_of(const MirrorPolytope& p, const Tolerances& tol = {});

// Facet pairs that meet in a ridge (all pairs in dimension 1).
std::vector<std::pair<int, int>> adjacent_pairs(const MirrorPolytope& p);

struct VertexLink {
  int vertex = 0;
  Subset facets;  // S_p, indices into the parent polytope
  MirrorPolytope polytope;
};

// The polytope P_p in S(V / <p>), facets S_p. Its Cartan matrix is the S_p
// principal submatrix of A_P.
VertexLink link_at_vertex(const MirrorPolytope& p, int vertex);

// alpha_s = e_s, v_s = 2 B e_s with B_st = -cos(pi / m_st) (B_st = -1 for
// infinity). The Cartan matrix equals the Gram matrix of W.
MirrorPolytope tits_simplex(const CoxeterSystem& sys, double eps = 1e-9);

// The dimension 0 polytope {x <= 0} in S^0.
MirrorPolytope point_polytope();

// Direct sum of the underlying cones; dimension d + e + 1.
MirrorPolytope product(const MirrorPolytope& p, const MirrorPolytope& q);
MirrorPolytope cone_over(const MirrorPolytope& p);

// Realizes a Cartan matrix of rank r + 1 as a polytope of dimension r by
// factoring A = X Y through R^{r+1}: alpha_s is row s of X, v_t column t of Y.
MirrorPolytope polytope_from_cartan(const Mat& a, std::vector<std::string> names = {}, double eps = 1e-9);

// sum_s mu_s alpha_s with mu > 0 a left Perron vector of each component of
// A_P. Negative on the polars and on P. Throws NotNegativeType.
Vec containing_affine_chart(const MirrorPolytope& p, double eps = 1e-9);

}  // namespace cvk
