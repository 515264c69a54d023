#include "cvk/truncate.hpp"

#include <algorithm>
#include <cmath>

#include "cvk/classify.hpp"
#include "cvk/errors.hpp"

namespace cvk {

namespace {

std::string label_of(const MirrorPolytope& p, const Subset& fs) {
  std::string out;
  for (int s : fs) out += p.facet(s).name;
  return out;
}

// The new facet meets its neighbours at right angles and is a copy of the
// vertex link.
void verify_truncation(const MirrorPolytope& before, const MirrorPolytope& after, const TruncationPlan& plan,
                       int new_facet, const Tolerances& tol) {
  const CoxeterSystem w = coxeter_system_of(after, tol);
  const Facet& nf = after.facet(new_facet);
  for (int s : plan.facets) {
    const double prod = std::abs(after.facet(s).alpha.dot(nf.polar) * nf.alpha.dot(after.facet(s).polar));
    if (w.label(s, new_facet) != 2 || prod > tol.eps)
      throw Error(ErrorCode::PostconditionFailed, "new ridge at facet " + after.facet(s).name + " is not a right angle");
  }
  const Mat basis = null_space(nf.alpha.transpose(), tol.eps);
  std::vector<Facet> restricted;
  for (int s : plan.facets) {
    const Facet& f = after.facet(s);
    restricted.push_back({f.name, basis.transpose() * f.alpha, basis.transpose() * f.polar});
  }
  const MirrorPolytope face = MirrorPolytope::build(before.dim() - 1, std::move(restricted), tol.eps);
  const VertexLink link = link_at_vertex(before, plan.vertex);
  const Mat diff = face.cartan_matrix() - link.polytope.cartan_matrix();
  if (max_abs(diff) > 1e3 * tol.eps ||
      face.face_lattice().faces.size() != link.polytope.face_lattice().faces.size())
    throw Error(ErrorCode::PostconditionFailed, "new facet is not isomorphic to the vertex link");
}

}  // namespace

bool is_simple_vertex(const MirrorPolytope& p, int vertex) {
  const FaceLattice& fl = p.face_lattice();
  if (vertex < 0 || vertex >= static_cast<int>(fl.vertices.size()))
    throw Error(ErrorCode::NotAVertex, "no vertex with index " + std::to_string(vertex));
  return static_cast<int>(fl.vertex_facets[vertex].size()) == p.dim();
}

TruncationPlan truncability(const MirrorPolytope& p, int vertex, const Tolerances& tol) {
  if (!is_simple_vertex(p, vertex)) throw Error(ErrorCode::NotSimple, "vertex is not simple");
  const VertexReport vr = classify_vertex(p, vertex, tol);
  if (vr.kind != VertexKind::Loxodromic)
    throw Error(ErrorCode::NotLoxodromic, std::string("vertex is ") + to_string(vr.kind));
  if (!vr.link_perfect) throw Error(ErrorCode::LinkNotPerfect, "vertex link is not perfect");

  const FaceLattice& fl = p.face_lattice();
  const Vec& x = fl.vertices[vertex];
  Mat polars(static_cast<Eigen::Index>(vr.facets.size()), p.dim() + 1);
  for (std::size_t i = 0; i < vr.facets.size(); ++i)
    polars.row(static_cast<Eigen::Index>(i)) = p.facet(vr.facets[i]).polar.normalized().transpose();
  if (numerical_rank(polars, tol.eps) != p.dim())
    throw Error(ErrorCode::NotTruncable, "polars at the vertex do not span a hyperplane");
  Vec beta = null_space(polars, tol.eps).col(0);
  if (std::abs(beta.dot(x)) <= tol.eps) throw Error(ErrorCode::NotTruncable, "polar hyperplane passes through the vertex");
  if (beta.dot(x) < 0) beta = -beta;

  for (int t = 0; t < p.facet_count(); ++t) {
    if (std::find(vr.facets.begin(), vr.facets.end(), t) != vr.facets.end()) continue;
    const Vec a = p.facet(t).alpha.normalized();
    if (std::abs(std::abs(a.dot(beta)) - 1.0) <= tol.eps)
      throw Error(ErrorCode::ConeException, "polar hyperplane supports facet " + p.facet(t).name + ": P is a cone");
  }
  bool meets_interior = false;
  for (std::size_t q = 0; q < fl.vertices.size(); ++q) {
    if (static_cast<int>(q) == vertex) continue;
    const double val = beta.dot(fl.vertices[q]);
    if (val >= -tol.eps)
      throw Error(ErrorCode::NotTruncable, "polar hyperplane does not separate the vertex from " +
                                               label_of(p, fl.vertex_facets[q]));
    meets_interior = true;
  }
  if (!meets_interior) throw Error(ErrorCode::NotTruncable, "polar hyperplane misses the interior");

  TruncationPlan plan;
  plan.vertex = vertex;
  plan.facets = vr.facets;
  plan.polar = x;
  plan.covector = beta * (2.0 / beta.dot(x));
  return plan;
}

MirrorPolytope truncate_vertex(const MirrorPolytope& p, const TruncationPlan& plan, const Tolerances& tol) {
  std::vector<Facet> facets = p.facets();
  facets.push_back({"t" + label_of(p, plan.facets), plan.covector, plan.polar});
  MirrorPolytope out = MirrorPolytope::build(p.dim(), std::move(facets), tol.eps);
  verify_truncation(p, out, plan, out.facet_count() - 1, tol);
  return out;
}

TruncationResult truncate_all(const MirrorPolytope& p, const Tolerances& tol) {
  const PerfectionReport perf = perfection(p, tol);
  std::vector<TruncationPlan> plans;
  for (int v : perf.loxodromic_vertices) plans.push_back(truncability(p, v, tol));
  for (const VertexReport& r : perf.vertices)
    if (r.kind == VertexKind::Imperfect)
      throw Error(ErrorCode::LinkNotPerfect, "vertex with imperfect link: " + r.detail);
  if (plans.empty()) return {p, {}, {}};

  std::vector<Facet> facets = p.facets();
  std::vector<int> added;
  for (const TruncationPlan& plan : plans) {
    added.push_back(static_cast<int>(facets.size()));
    facets.push_back({"t" + label_of(p, plan.facets), plan.covector, plan.polar});
  }
  MirrorPolytope out = MirrorPolytope::build(p.dim(), std::move(facets), tol.eps);
  for (const Subset& fs : out.face_lattice().vertex_facets) {
    int hits = 0;
    for (int s : fs) hits += std::find(added.begin(), added.end(), s) != added.end();
    if (hits > 1) throw Error(ErrorCode::FacetsCollide, "two truncation facets meet inside P");
  }
  for (std::size_t i = 0; i < plans.size(); ++i) verify_truncation(p, out, plans[i], added[i], tol);
  if (!perfection(out, tol).quasi_perfect())
    throw Error(ErrorCode::PostconditionFailed, "truncated polytope is not quasi-perfect");
  return {out, plans, added};
}

}  // namespace cvk
