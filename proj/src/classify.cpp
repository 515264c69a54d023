#include "cvk/classify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cvk/errors.hpp"
#include "cvk/truncate.hpp"

namespace cvk {

namespace {

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

bool positive_type(const Mat& a, double eps) {
  if (a.size() == 0) return true;
  const CartanType t = cartan_type(a, eps);
  return t.aggregate == Sign::Positive;
}

std::string vertex_label(const MirrorPolytope& p, int v) {
  std::string out = "p{";
  const Subset& fs = p.face_lattice().vertex_facets[v];
  for (std::size_t i = 0; i < fs.size(); ++i) out += (i ? "," : "") + p.facet(fs[i]).name;
  return out + "}";
}

std::string names_of(const MirrorPolytope& p, const Subset& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + p.facet(s[i]).name;
  return out + "}";
}

std::string names_of(const CoxeterSystem& w, const Subset& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + w.name(s[i]);
  return out + "}";
}

}  // namespace

const char* to_string(VertexKind k) {
  switch (k) {
    case VertexKind::Elliptic: return "elliptic";
    case VertexKind::Parabolic: return "parabolic";
    case VertexKind::Loxodromic: return "loxodromic";
    case VertexKind::Imperfect: return "imperfect";
  }
  return "?";
}

const char* to_string(Perfection p) {
  switch (p) {
    case Perfection::Perfect: return "perfect";
    case Perfection::QuasiPerfect: return "quasi-perfect";
    case Perfection::TwoPerfect: return "2-perfect";
    case Perfection::NotTwoPerfect: return "not-2-perfect";
  }
  return "?";
}

const char* to_string(PolytopeKind k) {
  switch (k) {
    case PolytopeKind::Elliptic: return "elliptic";
    case PolytopeKind::Parabolic: return "parabolic";
    case PolytopeKind::Loxodromic: return "loxodromic";
    case PolytopeKind::Decomposable: return "decomposable";
  }
  return "?";
}

const char* to_string(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    case Tri::NotApplicable: return "not-applicable";
    case Tri::Unknown: return "unknown";
  }
  return "?";
}

const char* to_string(ZariskiVerdict z) {
  switch (z) {
    case ZariskiVerdict::ConjugateSO: return "conjugate-to-SO(d,1)";
    case ZariskiVerdict::FullSL: return "SL(d+1)";
    case ZariskiVerdict::Degenerate: return "degenerate";
    case ZariskiVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

VertexReport classify_vertex(const MirrorPolytope& p, int vertex, const Tolerances& tol) {
  const CoxeterSystem w = coxeter_system_of(p, tol);
  const FaceLattice& fl = p.face_lattice();
  const VertexLink link = link_at_vertex(p, vertex);
  const Mat a = link.polytope.cartan_matrix();
  const int dl = p.dim() - 1;

  VertexReport r;
  r.vertex = vertex;
  r.facets = link.facets;
  r.simple = static_cast<int>(link.facets.size()) == p.dim();
  r.link_type = cartan_type(a, tol.eps);
  r.link_rank = numerical_rank(a, tol.eps);
  if (r.link_type.aggregate == Sign::Positive) r.kind = VertexKind::Elliptic;
  else if (r.link_type.aggregate == Sign::Zero && r.link_rank == dl) r.kind = VertexKind::Parabolic;
  else if (r.link_type.aggregate == Sign::Negative && r.link_rank == dl + 1) r.kind = VertexKind::Loxodromic;
  else r.kind = VertexKind::Imperfect;

  // Perfection of the link from its own vertex links.
  const FaceLattice& ll = link.polytope.face_lattice();
  r.link_perfect = true;
  for (const Subset& local : ll.vertex_facets)
    if (!positive_type(principal(a, local), tol.eps)) r.link_perfect = false;

  // Edges through p, checked against W_P.
  for (int fi : fl.faces_of_dim(1)) {
    const Face& e = fl.faces[fi];
    if (!contains(e.vertices, vertex)) continue;
    if (!is_spherical(w, e.facets, tol.eps)) r.infinite_edges.push_back(e.facets);
  }

  if (r.kind == VertexKind::Imperfect) {
    r.detail = "link is ";
    r.detail += r.link_type.mixed() ? "of mixed type" : std::string(to_string(*r.link_type.aggregate)) + " type";
    r.detail += " with rank " + std::to_string(r.link_rank);
    if (!r.infinite_edges.empty()) r.detail += "; infinite edge group on " + names_of(p, r.infinite_edges.front());
  }
  return r;
}

PerfectionReport perfection(const MirrorPolytope& p, const Tolerances& tol) {
  const CoxeterSystem w = coxeter_system_of(p, tol);
  const FaceLattice& fl = p.face_lattice();
  PerfectionReport out;
  bool links_perfect = true;
  for (std::size_t v = 0; v < fl.vertices.size(); ++v) {
    out.vertices.push_back(classify_vertex(p, static_cast<int>(v), tol));
    const VertexReport& r = out.vertices.back();
    links_perfect = links_perfect && r.link_perfect;
    if (r.kind == VertexKind::Parabolic) out.parabolic_vertices.push_back(r.vertex);
    if (r.kind == VertexKind::Loxodromic) out.loxodromic_vertices.push_back(r.vertex);
  }
  for (int fi : fl.faces_of_dim(1))
    if (!is_spherical(w, fl.faces[fi].facets, tol.eps)) out.infinite_edges.push_back(fl.faces[fi].facets);
  const bool edges_finite = out.infinite_edges.empty();
  if (links_perfect != edges_finite)
    throw Error(ErrorCode::PostconditionFailed, "link and edge criteria for 2-perfection disagree");

  const auto all_of_kind = [&](std::initializer_list<VertexKind> ks) {
    return std::all_of(out.vertices.begin(), out.vertices.end(), [&](const VertexReport& r) {
      return std::find(ks.begin(), ks.end(), r.kind) != ks.end();
    });
  };
  if (!links_perfect) out.level = Perfection::NotTwoPerfect;
  else if (all_of_kind({VertexKind::Elliptic})) out.level = Perfection::Perfect;
  else if (all_of_kind({VertexKind::Elliptic, VertexKind::Parabolic})) out.level = Perfection::QuasiPerfect;
  else out.level = Perfection::TwoPerfect;
  return out;
}

PolytopeClass polytope_class(const MirrorPolytope& p, const Tolerances& tol) {
  PolytopeClass out;
  const Mat a = p.cartan_matrix();
  out.type = cartan_type(a, tol.eps);
  out.rank = numerical_rank(a, tol.eps);
  try {
    out.coxeter = coxeter_system_of(p, tol);
  } catch (const Error&) {
  }
  if (out.coxeter) {
    out.w_irreducible = is_irreducible(*out.coxeter, out.coxeter->all());
    if (out.w_irreducible) {
      const DiagramClass dc = classify_irreducible(*out.coxeter, tol.eps);
      out.w_kind = dc.kind;
      out.w_name = dc.name;
    }
  }
  const int d = p.dim();
  if (out.type.aggregate == Sign::Positive) {
    out.kind = PolytopeKind::Elliptic;
  } else if (out.type.aggregate == Sign::Zero && out.rank == d) {
    out.kind = PolytopeKind::Parabolic;
  } else if (out.type.aggregate == Sign::Negative && out.rank == d + 1) {
    out.kind = PolytopeKind::Loxodromic;
  } else {
    out.kind = PolytopeKind::Decomposable;
    for (int f = 0; f < p.facet_count() && !out.cone_vertex; ++f) {
      bool orthogonal = true;
      for (int s = 0; s < p.facet_count() && orthogonal; ++s)
        if (s != f) orthogonal = std::abs(a(f, s)) <= tol.eps && std::abs(a(s, f)) <= tol.eps;
      if (!orthogonal) continue;
      const Vec& v = p.facet(f).polar;
      auto hit = p.face_lattice().find_vertex(v);
      if (!hit) hit = p.face_lattice().find_vertex(-v);
      if (hit) out.cone_vertex = *hit;
    }
    if (out.cone_vertex) {
      const PolytopeClass base = polytope_class(link_at_vertex(p, *out.cone_vertex).polytope, tol);
      out.base_kind = base.kind;
      out.description = std::string("cone over a ") + to_string(base.kind) + " polytope";
    } else {
      out.description = out.type.mixed() ? "Cartan matrix of mixed type"
                                         : std::string(to_string(*out.type.aggregate)) + " type with rank " +
                                               std::to_string(out.rank);
    }
  }
  if (out.description.empty()) out.description = to_string(out.kind);
  return out;
}

IrreducibilityReport is_irreducible_rep(const MirrorPolytope& p, const Tolerances& tol) {
  const CoxeterSystem w = coxeter_system_of(p, tol);
  IrreducibilityReport out;
  out.irreducible = is_irreducible(w, w.all()) && numerical_rank(p.cartan_matrix(), tol.eps) == p.dim() + 1;
  out.strongly_irreducible = out.irreducible && classify_irreducible(w, tol.eps).kind == DiagramKind::Large;
  return out;
}

ActionReport action_classification(const MirrorPolytope& p, const Tolerances& tol) {
  ActionReport out;
  out.geometrically_finite.anchor = "2-perfect loxodromic polytopes give geometrically finite actions";
  out.finite_covolume.anchor = "finite covolume iff quasi-perfect";
  out.convex_cocompact.anchor = "convex cocompact iff no parabolic vertex";
  out.cocompact.anchor = "cocompact iff perfect";
  const PolytopeClass pc = polytope_class(p, tol);
  if (pc.kind != PolytopeKind::Loxodromic) {
    out.reason = std::string("polytope is ") + to_string(pc.kind) + ", not loxodromic";
    return out;
  }
  const PerfectionReport perf = perfection(p, tol);
  if (!perf.two_perfect()) {
    out.reason = "polytope is not 2-perfect; infinite edge group on " + names_of(p, perf.infinite_edges.front());
    return out;
  }
  const auto verdict = [](bool b) { return b ? Tri::True : Tri::False; };
  out.geometrically_finite.value = Tri::True;
  out.finite_covolume.value = verdict(perf.loxodromic_vertices.empty());
  if (!perf.loxodromic_vertices.empty())
    out.finite_covolume.witness = "loxodromic vertex " + vertex_label(p, perf.loxodromic_vertices.front());
  out.convex_cocompact.value = verdict(perf.parabolic_vertices.empty());
  if (!perf.parabolic_vertices.empty())
    out.convex_cocompact.witness = "parabolic vertex " + vertex_label(p, perf.parabolic_vertices.front());
  out.cocompact.value = verdict(perf.level == Perfection::Perfect);
  for (const VertexReport& r : perf.vertices)
    if (r.kind != VertexKind::Elliptic) {
      out.cocompact.witness = std::string(to_string(r.kind)) + " vertex " + vertex_label(p, r.vertex);
      break;
    }
  const auto implies = [](const Verdict& a, const Verdict& b) { return a.value != Tri::True || b.value == Tri::True; };
  if (!implies(out.cocompact, out.convex_cocompact) || !implies(out.cocompact, out.finite_covolume) ||
      !implies(out.convex_cocompact, out.geometrically_finite) || !implies(out.finite_covolume, out.geometrically_finite))
    throw Error(ErrorCode::PostconditionFailed, "action verdicts violate the implication chain");
  return out;
}

DegenerateReport degenerate_classification(const MirrorPolytope& p, const Tolerances& tol) {
  const PerfectionReport perf = perfection(p, tol);
  if (!perf.two_perfect()) throw Error(ErrorCode::PreconditionUnmet, "polytope is not 2-perfect");
  const PolytopeClass pc = polytope_class(p, tol);
  DegenerateReport out;
  switch (pc.kind) {
    case PolytopeKind::Elliptic:
      out = {1, "elliptic: the group is finite and tiles the whole sphere"};
      break;
    case PolytopeKind::Parabolic:
      out = {2, "parabolic: the group acts cocompactly on an affine chart"};
      break;
    case PolytopeKind::Loxodromic:
      if (is_irreducible_rep(p, tol).irreducible) out = {3, "loxodromic with irreducible representation"};
      break;
    case PolytopeKind::Decomposable:
      if (pc.cone_vertex && pc.base_kind == PolytopeKind::Parabolic) {
        out = {4, "cone over a parabolic polytope"};
      } else if (pc.cone_vertex && pc.base_kind == PolytopeKind::Loxodromic) {
        const MirrorPolytope base = link_at_vertex(p, *pc.cone_vertex).polytope;
        if (perfection(base, tol).level == Perfection::Perfect) out = {4, "cone over a perfect loxodromic polytope"};
      }
      break;
  }
  if (out.case_number == 0) out.description = "no degenerate case applies: " + pc.description;
  return out;
}

std::vector<Mat> invariant_quadratic_forms(const std::vector<Mat>& generators, double eps) {
  if (generators.empty()) throw Error(ErrorCode::PreconditionUnmet, "no generators");
  const auto n = generators.front().rows();
  std::vector<std::pair<Eigen::Index, Eigen::Index>> slots;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) slots.emplace_back(i, j);
  const auto k = static_cast<Eigen::Index>(slots.size());
  Mat system(static_cast<Eigen::Index>(generators.size()) * k, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    Mat b = Mat::Zero(n, n);
    b(slots[c].first, slots[c].second) = b(slots[c].second, slots[c].first) = 1.0;
    for (std::size_t g = 0; g < generators.size(); ++g) {
      const Mat& m = generators[g];
      const Mat diff = m.transpose() * b * m - b;
      for (Eigen::Index r = 0; r < k; ++r)
        system(static_cast<Eigen::Index>(g) * k + r, c) = diff(slots[r].first, slots[r].second);
    }
  }
  const Mat kernel = null_space(system, eps);
  std::vector<Mat> out;
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    Mat b(n, n);
    for (Eigen::Index s = 0; s < k; ++s) b(slots[s].first, slots[s].second) = b(slots[s].second, slots[s].first) = kernel(s, c);
    out.push_back(b / max_abs(b));
  }
  return out;
}

Signature signature(const Mat& form, double eps) {
  const Vec ev = symmetric_eigenvalues(form / std::max(max_abs(form), 1e-300));
  Signature s;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > eps) ++s.positive;
    else if (ev(i) < -eps) ++s.negative;
    else ++s.zero;
  }
  return s;
}

ZariskiReport zariski_closure(const MirrorPolytope& p, const Tolerances& tol, std::uint64_t seed) {
  const PolytopeClass pc = polytope_class(p, tol);
  ZariskiReport out;
  const int d = p.dim();
  if (pc.kind == PolytopeKind::Decomposable && pc.cone_vertex) {
    const MirrorPolytope base = link_at_vertex(p, *pc.cone_vertex).polytope;
    out.verdict = ZariskiVerdict::Degenerate;
    if (pc.base_kind == PolytopeKind::Parabolic) {
      out.description = "cone over a parabolic polytope: conjugate into the translations of R^" + std::to_string(d - 1);
    } else if (pc.base_kind == PolytopeKind::Loxodromic) {
      const ZariskiReport inner = zariski_closure(base, tol, seed);
      out.description = inner.verdict == ZariskiVerdict::ConjugateSO
                            ? "cone over a loxodromic polytope: conjugate to SO(" + std::to_string(d - 1) + ",1)"
                            : "cone over a loxodromic polytope: conjugate to SL(" + std::to_string(d) + ")";
    } else {
      out.description = "cone over an elliptic polytope";
    }
    return out;
  }
  if (pc.kind != PolytopeKind::Loxodromic) throw Error(ErrorCode::NotLoxodromic, "polytope is not loxodromic");
  if (!perfection(p, tol).two_perfect()) throw Error(ErrorCode::PreconditionUnmet, "polytope is not 2-perfect");
  if (pc.w_kind == DiagramKind::Affine) {
    out.verdict = ZariskiVerdict::Degenerate;
    out.description = "affine W: the group is conjugate into the diagonal group";
    return out;
  }
  if (!is_irreducible_rep(p, tol).irreducible)
    throw Error(ErrorCode::PreconditionUnmet, "the representation is not irreducible");

  std::vector<Mat> gens;
  for (int s = 0; s < p.facet_count(); ++s) gens.push_back(p.reflection(s));
  const std::vector<Mat> forms = invariant_quadratic_forms(gens, tol.eps);
  out.form_space_dim = static_cast<int>(forms.size());
  if (forms.empty()) {
    out.verdict = ZariskiVerdict::FullSL;
    out.description = "no invariant quadratic form";
    return out;
  }
  const auto lorentzian = [&](const Mat& b) -> std::optional<Mat> {
    const Signature sg = signature(b, tol.eps);
    if (sg.zero != 0) return std::nullopt;
    if (sg.positive == d && sg.negative == 1) return b;
    if (sg.positive == 1 && sg.negative == d) return Mat(-b);
    return std::nullopt;
  };
  std::optional<Mat> witness;
  for (const Mat& b : forms)
    if (!witness) witness = lorentzian(b);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int attempt = 0; attempt < 64 && !witness && forms.size() > 1; ++attempt) {
    Mat b = Mat::Zero(d + 1, d + 1);
    for (const Mat& f : forms) b += gauss(rng) * f;
    witness = lorentzian(b);
  }
  if (!witness) {
    out.verdict = ZariskiVerdict::Inconclusive;
    out.description = "invariant forms exist but none of signature (d,1) was found";
    return out;
  }
  out.verdict = ZariskiVerdict::ConjugateSO;
  out.form = *witness / max_abs(*witness);
  for (const Mat& g : gens) out.residual = std::max(out.residual, max_abs(g.transpose() * *out.form * g - *out.form));
  out.negative_inside = true;
  for (const Vec& x : p.face_lattice().vertices) {
    const Vec y = x + p.interior_point();
    if (!(y.dot(*out.form * y) < 0)) out.negative_inside = false;
  }
  if (!(p.interior_point().dot(*out.form * p.interior_point()) < 0)) out.negative_inside = false;
  out.description = "preserves a form of signature (" + std::to_string(d) + ",1)";
  return out;
}

StrictConvexityReport strict_convexity(const CoxeterSystem& w, Perfection level, const std::vector<Subset>& peripherals,
                                       double eps) {
  StrictConvexityReport out;
  out.quasi_perfect = level == Perfection::Perfect || level == Perfection::QuasiPerfect;
  out.peripherals = peripherals;
  if (level == Perfection::NotTwoPerfect) {
    out.reason = "not 2-perfect";
    return out;
  }
  if (!out.quasi_perfect) {
    out.reason = "a loxodromic vertex leaves a flat boundary piece";
    return out;
  }
  out.check = relative_hyperbolicity_check(w, peripherals, eps);
  out.strictly_convex = out.c1_boundary = out.gromov_hyperbolic = out.check.holds;
  if (out.check.holds) {
    out.reason = "W is relatively hyperbolic with respect to the parabolic vertex groups";
  } else {
    out.reason = out.check.reason;
    for (const Subset& s : out.check.witness) out.reason += " " + names_of(w, s);
  }
  return out;
}

StrictConvexityReport strict_convexity(const MirrorPolytope& p, const Tolerances& tol) {
  const PolytopeClass pc = polytope_class(p, tol);
  if (pc.kind != PolytopeKind::Loxodromic) throw Error(ErrorCode::NotLoxodromic, "polytope is not loxodromic");
  const PerfectionReport perf = perfection(p, tol);
  std::vector<Subset> peripherals;
  for (int v : perf.parabolic_vertices) peripherals.push_back(p.face_lattice().vertex_facets[v]);
  StrictConvexityReport out = strict_convexity(*pc.coxeter, perf.level, peripherals, tol.eps);
  if (out.strictly_convex && !perf.quasi_perfect())
    throw Error(ErrorCode::PostconditionFailed, "strict convexity without quasi-perfection");
  if (perf.level == Perfection::NotTwoPerfect) out.reason += "; infinite edge group on " + names_of(p, perf.infinite_edges.front());
  else if (perf.level == Perfection::TwoPerfect)
    out.reason += " at " + vertex_label(p, perf.loxodromic_vertices.front());
  return out;
}

StrictExistenceReport strictly_convex_invariant_set(const MirrorPolytope& p, const Tolerances& tol) {
  StrictExistenceReport out;
  const PolytopeClass pc = polytope_class(p, tol);
  if (pc.kind != PolytopeKind::Loxodromic) {
    out.reason = "polytope is not loxodromic";
    return out;
  }
  const PerfectionReport perf = perfection(p, tol);
  if (!perf.two_perfect()) {
    out.reason = "polytope is not 2-perfect";
    return out;
  }
  for (int v : perf.loxodromic_vertices)
    if (perf.vertices[v].facets.size() != static_cast<std::size_t>(p.dim())) {
      out.verdict = Tri::Unknown;
      out.reason = "loxodromic vertex " + vertex_label(p, v) + " is not simple";
      return out;
    }
  std::vector<Subset> peripherals;
  for (int v : perf.parabolic_vertices) peripherals.push_back(perf.vertices[v].facets);
  const RelHypCheck check = relative_hyperbolicity_check(*pc.coxeter, peripherals, tol.eps);
  out.verdict = check.holds ? Tri::True : Tri::False;
  out.reason = check.holds ? "W_P is relatively hyperbolic with respect to its parabolic vertex groups" : check.reason;
  const MirrorPolytope truncated = truncate_all(p, tol).polytope;
  out.truncated_strictly_convex = strict_convexity(truncated, tol).strictly_convex;
  if (*out.truncated_strictly_convex != check.holds)
    throw Error(ErrorCode::PostconditionFailed, "truncated polytope disagrees with the relative hyperbolicity test");
  return out;
}

ExtremesReport invariant_convex_extremes(const MirrorPolytope& p, const Tolerances& tol) {
  const PolytopeClass pc = polytope_class(p, tol);
  if (pc.kind != PolytopeKind::Loxodromic) throw Error(ErrorCode::NotLoxodromic, "polytope is not loxodromic");
  const PerfectionReport perf = perfection(p, tol);
  if (!perf.two_perfect()) throw Error(ErrorCode::PreconditionUnmet, "polytope is not 2-perfect");
  ExtremesReport out;
  out.loxodromic_vertices = perf.loxodromic_vertices;
  out.finite_covolume = perf.loxodromic_vertices.empty();
  out.unique_invariant_domain = out.finite_covolume;
  out.description = out.unique_invariant_domain
                        ? "the invariant properly convex open set is unique"
                        : "Omega_min is strictly smaller than Omega_max; loxodromic vertices cut out the difference";
  return out;
}

}  // namespace cvk
