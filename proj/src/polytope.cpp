#include "cvk/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "cvk/cartan.hpp"
#include "cvk/errors.hpp"

namespace cvk {

namespace {

// Vertex tests run on unit covectors. Values within kActive * eps of zero
// put a facet in S_p; values between that and kAmbiguous * eps are reported
// as numerically ambiguous rather than guessed.
constexpr double kActive = 100.0;
constexpr double kAmbiguous = 1e4;

template <class F>
void for_each_combination(int n, int k, F&& f) {
  std::vector<int> comb(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) comb[i] = i;
  if (k > n) return;
  while (true) {
    f(comb);
    int i = k - 1;
    while (i >= 0 && comb[i] == n - k + i) --i;
    if (i < 0) return;
    ++comb[i];
    for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::shared_ptr<FaceLattice> compute_lattice(int dim, const Mat& unit_alpha, double eps) {
  const int m = static_cast<int>(unit_alpha.rows());
  if (binomial(m, dim) > 2e6)
    throw Error(ErrorCode::CapExceeded, "too many facet subsets for vertex enumeration");
  auto lattice = std::make_shared<FaceLattice>();
  std::map<Subset, int> by_active;
  const double active_tol = kActive * eps;

  for_each_combination(m, dim, [&](const std::vector<int>& comb) {
    Mat rows(dim, unit_alpha.cols());
    for (int i = 0; i < dim; ++i) rows.row(i) = unit_alpha.row(comb[i]);
    if (numerical_rank(rows, eps) != dim) return;
    Vec ray = null_space(rows, eps).col(0);
    Vec vals = unit_alpha * ray;
    if (vals.maxCoeff() > active_tol) {
      ray = -ray;
      vals = -vals;
    }
    if (vals.maxCoeff() > active_tol) return;
    Subset active;
    for (int s = 0; s < m; ++s) {
      const double v = std::abs(vals(s));
      if (v <= active_tol) active.push_back(s);
      else if (v < kAmbiguous * eps)
        throw Error(ErrorCode::DegenerateLattice, "facet " + std::to_string(s + 1) + " nearly passes through a vertex");
    }
    auto [it, fresh] = by_active.emplace(active, static_cast<int>(lattice->vertices.size()));
    if (fresh) {
      lattice->vertices.push_back(ray);
      lattice->vertex_facets.push_back(active);
    } else if ((lattice->vertices[it->second] - ray).norm() > 1e-6) {
      throw Error(ErrorCode::DegenerateLattice, "one active set yields two distinct rays");
    }
  });

  const auto nv = lattice->vertices.size();
  for (std::size_t i = 0; i < nv; ++i)
    for (std::size_t j = i + 1; j < nv; ++j)
      if ((lattice->vertices[i] - lattice->vertices[j]).norm() < 1e-7)
        throw Error(ErrorCode::DegenerateLattice, "two vertices coincide numerically");

  // Faces are the intersections of facets, plus P itself.
  std::vector<std::vector<int>> facet_vertices(static_cast<std::size_t>(m));
  for (std::size_t v = 0; v < nv; ++v)
    for (int s : lattice->vertex_facets[v]) facet_vertices[s].push_back(static_cast<int>(v));

  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue;
  std::vector<int> everything(nv);
  for (std::size_t v = 0; v < nv; ++v) everything[v] = static_cast<int>(v);
  if (nv > 0) {
    seen.insert(everything);
    queue.push_back(everything);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::vector<int> current = queue[head];
    for (int s = 0; s < m; ++s) {
      std::vector<int> meet;
      std::set_intersection(current.begin(), current.end(), facet_vertices[s].begin(), facet_vertices[s].end(),
                            std::back_inserter(meet));
      if (!meet.empty() && seen.insert(meet).second) queue.push_back(std::move(meet));
    }
  }
  for (const auto& verts : queue) {
    Face f;
    f.vertices = verts;
    Mat vm(unit_alpha.cols(), static_cast<Eigen::Index>(verts.size()));
    for (std::size_t i = 0; i < verts.size(); ++i) vm.col(static_cast<Eigen::Index>(i)) = lattice->vertices[verts[i]];
    f.dim = numerical_rank(vm, eps) - 1;
    for (int s = 0; s < m; ++s)
      if (std::includes(facet_vertices[s].begin(), facet_vertices[s].end(), verts.begin(), verts.end()))
        f.facets.push_back(s);
    lattice->faces.push_back(std::move(f));
  }
  std::stable_sort(lattice->faces.begin(), lattice->faces.end(),
                   [](const Face& a, const Face& b) { return a.dim < b.dim; });
  return lattice;
}

double zero_scale(const Vec& alpha, const Vec& v) { return std::max(1.0, alpha.norm() * v.norm()); }

}  // namespace

std::vector<int> FaceLattice::faces_of_dim(int k) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (faces[i].dim == k) out.push_back(static_cast<int>(i));
  return out;
}

std::optional<int> FaceLattice::find_vertex(const Vec& x, double tol) const {
  const Vec u = x.normalized();
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if ((vertices[i] - u).norm() <= tol) return static_cast<int>(i);
  return std::nullopt;
}

MirrorPolytope MirrorPolytope::build(int dim, std::vector<Facet> facets, double eps) {
  if (dim < 0) throw Error(ErrorCode::RankMismatch, "dimension must be nonnegative");
  if (facets.empty()) throw Error(ErrorCode::NotProperlyConvex, "a polytope needs at least one facet");
  const auto n = static_cast<Eigen::Index>(dim + 1);
  for (std::size_t i = 0; i < facets.size(); ++i) {
    Facet& f = facets[i];
    if (f.name.empty()) f.name = std::to_string(i + 1);
    if (f.alpha.size() != n || f.polar.size() != n)
      throw Error(ErrorCode::RankMismatch, "facet " + f.name + " does not live in R^" + std::to_string(n));
    if (std::abs(f.alpha.dot(f.polar) - 2.0) > eps * zero_scale(f.alpha, f.polar))
      throw Error(ErrorCode::NotNormalized, "facet " + f.name + " has alpha(v) != 2");
  }
  MirrorPolytope p;
  p.dim_ = dim;
  p.eps_ = eps;
  p.facets_ = std::move(facets);

  Mat unit = p.alphas();
  for (Eigen::Index i = 0; i < unit.rows(); ++i) unit.row(i).normalize();
  if (numerical_rank(unit, eps) < n)
    throw Error(ErrorCode::NotProperlyConvex, "the facet covectors do not span the dual space");

  auto lattice = compute_lattice(dim, unit, eps);
  if (lattice->vertices.empty()) throw Error(ErrorCode::EmptyInterior, "the cone has no extreme rays");
  Mat vm(n, static_cast<Eigen::Index>(lattice->vertices.size()));
  for (std::size_t i = 0; i < lattice->vertices.size(); ++i) vm.col(static_cast<Eigen::Index>(i)) = lattice->vertices[i];
  if (numerical_rank(vm, eps) < n) throw Error(ErrorCode::EmptyInterior, "the vertices do not span R^" + std::to_string(n));
  p.interior_ = vm.rowwise().sum().normalized();
  if ((unit * p.interior_).maxCoeff() >= -eps) throw Error(ErrorCode::EmptyInterior, "no strictly interior point");

  if (dim > 0) {
    std::set<std::vector<int>> facet_sets;
    for (int s = 0; s < p.facet_count(); ++s) {
      std::vector<int> on;
      for (std::size_t v = 0; v < lattice->vertices.size(); ++v)
        if (std::binary_search(lattice->vertex_facets[v].begin(), lattice->vertex_facets[v].end(), s))
          on.push_back(static_cast<int>(v));
      Mat fm(n, static_cast<Eigen::Index>(on.size()));
      for (std::size_t i = 0; i < on.size(); ++i) fm.col(static_cast<Eigen::Index>(i)) = lattice->vertices[on[i]];
      if (on.empty() || numerical_rank(fm, eps) < dim || !facet_sets.insert(on).second)
        throw Error(ErrorCode::RedundantFacet, "facet " + p.facets_[s].name + " does not support a facet of P");
    }
  }
  p.lattice_ = std::move(lattice);
  return p;
}

std::vector<std::string> MirrorPolytope::facet_names() const {
  std::vector<std::string> out;
  for (const auto& f : facets_) out.push_back(f.name);
  return out;
}

Mat MirrorPolytope::alphas() const {
  Mat m(facet_count(), dim_ + 1);
  for (int s = 0; s < facet_count(); ++s) m.row(s) = facets_[s].alpha.transpose();
  return m;
}

Mat MirrorPolytope::polars() const {
  Mat m(dim_ + 1, facet_count());
  for (int s = 0; s < facet_count(); ++s) m.col(s) = facets_[s].polar;
  return m;
}

Mat MirrorPolytope::reflection(int s) const {
  const Facet& f = facet(s);
  return Mat::Identity(dim_ + 1, dim_ + 1) - f.polar * f.alpha.transpose();
}

Mat MirrorPolytope::cartan_matrix() const { return alphas() * polars(); }

std::vector<std::pair<int, int>> adjacent_pairs(const MirrorPolytope& p) {
  std::vector<std::pair<int, int>> out;
  if (p.dim() == 1) {
    out.emplace_back(0, 1);
    return out;
  }
  if (p.dim() < 1) return out;
  std::set<std::pair<int, int>> seen;
  const FaceLattice& fl = p.face_lattice();
  for (int i : fl.faces_of_dim(p.dim() - 2)) {
    const Subset& fs = fl.faces[i].facets;
    for (std::size_t a = 0; a < fs.size(); ++a)
      for (std::size_t b = a + 1; b < fs.size(); ++b) seen.emplace(fs[a], fs[b]);
  }
  out.assign(seen.begin(), seen.end());
  return out;
}

CoxeterCheck check_coxeter_conditions(const MirrorPolytope& p, const Tolerances& tol) {
  CoxeterCheck out;
  for (auto [s, t] : adjacent_pairs(p)) {
    const Facet& fs = p.facet(s);
    const Facet& ft = p.facet(t);
    RidgeAngle r;
    r.s = s;
    r.t = t;
    r.a_st = fs.alpha.dot(ft.polar);
    r.a_ts = ft.alpha.dot(fs.polar);
    r.product = r.a_st * r.a_ts;
    const bool zero_st = std::abs(r.a_st) <= tol.eps * zero_scale(fs.alpha, ft.polar);
    const bool zero_ts = std::abs(r.a_ts) <= tol.eps * zero_scale(ft.alpha, fs.polar);
    const std::string where = fs.name + "," + ft.name;
    if ((!zero_st && r.a_st > 0) || (!zero_ts && r.a_ts > 0)) {
      r.problem = "positive Cartan entry at ridge " + where;
      out.sign_condition = false;
    } else if (zero_st != zero_ts) {
      r.problem = "one-sided zero Cartan entry at ridge " + where;
      out.sign_condition = false;
    } else if (zero_st) {
      r.label = 2;
      r.product = 0.0;
    } else if (r.product >= 4.0 - tol.eps) {
      r.label = kInfinity;
    } else {
      const double theta = std::acos(std::sqrt(r.product) / 2.0);
      const double m = std::round(std::numbers::pi / theta);
      if (m >= 2 && std::abs(theta - std::numbers::pi / m) <= tol.delta && m < 1e9) {
        r.label = static_cast<Label>(m);
      } else {
        r.problem = "dihedral angle at ridge " + where + " is not pi/m";
        out.angle_condition = false;
      }
    }
    out.ridges.push_back(std::move(r));
  }
  return out;
}

CoxeterSystem coxeter_system_of(const MirrorPolytope& p, const Tolerances& tol) {
  const CoxeterCheck check = check_coxeter_conditions(p, tol);
  for (const RidgeAngle& r : check.ridges)
    if (!r.problem.empty())
      throw Error(check.sign_condition ? ErrorCode::AngleNotSubmultiple : ErrorCode::ConditionCViolated, r.problem);
  const auto n = static_cast<std::size_t>(p.facet_count());
  std::vector<std::vector<Label>> labels(n, std::vector<Label>(n, kInfinity));
  for (std::size_t s = 0; s < n; ++s) labels[s][s] = 1;
  for (const RidgeAngle& r : check.ridges) labels[r.s][r.t] = labels[r.t][r.s] = r.label;
  return CoxeterSystem(p.facet_names(), labels);
}

VertexLink link_at_vertex(const MirrorPolytope& p, int vertex) {
  const FaceLattice& fl = p.face_lattice();
  if (vertex < 0 || vertex >= static_cast<int>(fl.vertices.size()))
    throw Error(ErrorCode::NotAVertex, "no vertex with index " + std::to_string(vertex));
  const Vec& x = fl.vertices[vertex];
  const Mat basis = null_space(x.transpose(), p.eps());  // orthonormal basis of x^perp
  VertexLink out{vertex, fl.vertex_facets[vertex], point_polytope()};
  std::vector<Facet> facets;
  for (int s : out.facets) {
    const Facet& f = p.facet(s);
    facets.push_back({f.name, basis.transpose() * f.alpha, basis.transpose() * f.polar});
  }
  out.polytope = MirrorPolytope::build(p.dim() - 1, std::move(facets), p.eps());
  return out;
}

MirrorPolytope tits_simplex(const CoxeterSystem& sys, double eps) {
  const int n = sys.rank();
  if (n == 0) throw Error(ErrorCode::RankMismatch, "empty Coxeter system");
  const Mat g = gram_matrix(sys);
  std::vector<Facet> facets;
  for (int s = 0; s < n; ++s) facets.push_back({sys.name(s), Vec::Unit(n, s), g.col(s)});
  return MirrorPolytope::build(n - 1, std::move(facets), eps);
}

MirrorPolytope point_polytope() {
  return MirrorPolytope::build(0, {Facet{"1", Vec::Constant(1, 1.0), Vec::Constant(1, 2.0)}});
}

MirrorPolytope product(const MirrorPolytope& p, const MirrorPolytope& q) {
  const int n1 = p.dim() + 1, n2 = q.dim() + 1;
  std::vector<Facet> facets;
  for (const Facet& f : p.facets()) {
    Vec a = Vec::Zero(n1 + n2), v = Vec::Zero(n1 + n2);
    a.head(n1) = f.alpha;
    v.head(n1) = f.polar;
    facets.push_back({f.name, a, v});
  }
  for (const Facet& f : q.facets()) {
    Vec a = Vec::Zero(n1 + n2), v = Vec::Zero(n1 + n2);
    a.tail(n2) = f.alpha;
    v.tail(n2) = f.polar;
    facets.push_back({f.name, a, v});
  }
  return MirrorPolytope::build(n1 + n2 - 1, std::move(facets), std::max(p.eps(), q.eps()));
}

MirrorPolytope cone_over(const MirrorPolytope& p) {
  std::vector<Facet> facets = product(p, point_polytope()).facets();
  facets.back().name = "cone";
  return MirrorPolytope::build(p.dim() + 1, std::move(facets), p.eps());
}

MirrorPolytope polytope_from_cartan(const Mat& a, std::vector<std::string> names, double eps) {
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec& sv = svd.singularValues();
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > eps * sv(0)) ++r;
  const Vec root = sv.head(r).cwiseSqrt();
  const Mat x = svd.matrixU().leftCols(r) * root.asDiagonal();
  const Mat y = root.asDiagonal() * svd.matrixV().leftCols(r).transpose();
  std::vector<Facet> facets;
  for (Eigen::Index s = 0; s < a.rows(); ++s) {
    const std::string name = static_cast<std::size_t>(s) < names.size() ? names[s] : std::to_string(s + 1);
    facets.push_back({name, x.row(s).transpose(), y.col(s)});
  }
  return MirrorPolytope::build(static_cast<int>(r) - 1, std::move(facets), eps);
}

Vec containing_affine_chart(const MirrorPolytope& p, double eps) {
  const Mat a = p.cartan_matrix();
  const CartanType type = cartan_type(a, eps);
  if (type.aggregate != Sign::Negative)
    throw Error(ErrorCode::NotNegativeType, "the Cartan matrix is not of negative type");
  Vec c = Vec::Zero(p.dim() + 1);
  for (const ComponentType& comp : type.components) {
    const Vec mu = perron_vector(principal(a, comp.indices).transpose());
    for (std::size_t i = 0; i < comp.indices.size(); ++i)
      c += mu(static_cast<Eigen::Index>(i)) * p.facet(comp.indices[i]).alpha;
  }
  return c;
}

}  // namespace cvk
