#include "cvk/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "cvk/cartan.hpp"
#include "cvk/catalog.hpp"
#include "cvk/classify.hpp"
#include "cvk/errors.hpp"
#include "cvk/fixtures.hpp"

namespace cvk {

namespace {

Json vec_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json mat_json(const Mat& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vec_json(m.row(i).transpose()));
  return out;
}

Vec vec_from(const Json& j, Eigen::Index size, const std::string& what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != size)
    throw Error(ErrorCode::Parse, what + " must be an array of " + std::to_string(size) + " numbers");
  Vec out(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    if (!j[static_cast<std::size_t>(i)].is_number()) throw Error(ErrorCode::Parse, what + " must hold numbers");
    out(i) = j[static_cast<std::size_t>(i)].get<double>();
  }
  return out;
}

Json names_json(const MirrorPolytope& p, const Subset& s) {
  Json out = Json::array();
  for (int i : s) out.push_back(p.facet(i).name);
  return out;
}

Json names_json(const CoxeterSystem& w, const Subset& s) {
  Json out = Json::array();
  for (int i : s) out.push_back(w.name(i));
  return out;
}

Json decision(const std::string& verdict, const std::string& theorem, Json residuals = Json::object(),
              Json witnesses = Json::array()) {
  return {{"verdict", verdict}, {"theorem", theorem}, {"residuals", std::move(residuals)}, {"witnesses", std::move(witnesses)}};
}

// Runs a section; a refusal becomes a not-applicable decision carrying the
// reason. Numerical integrity failures propagate.
Json guarded(const std::string& theorem, const std::function<Json()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    if (exit_status(e.code()) != 3) throw;
    Json out = decision("not-applicable", theorem);
    out["reason"] = e.what();
    out["refusal"] = to_string(e.code());
    return out;
  }
}

Json verdict_json(const Verdict& v, const std::string& reason) {
  Json out = decision(to_string(v.value), v.anchor);
  if (!v.witness.empty()) out["witnesses"].push_back(v.witness);
  if (v.value == Tri::NotApplicable) out["reason"] = reason;
  return out;
}

Json cartan_json(const MirrorPolytope& p, const Tolerances& tol) {
  const Mat a = p.cartan_matrix();
  const CartanType type = cartan_type(a, tol.eps);
  Json comps = Json::array();
  double worst_residual = 0.0, least_gap = std::numeric_limits<double>::infinity();
  for (const ComponentType& c : type.components) {
    comps.push_back({{"facets", names_json(p, c.indices)},
                     {"lambda", c.lambda.value},
                     {"sign", to_string(c.sign)}});
    worst_residual = std::max(worst_residual, c.lambda.residual);
    if (c.indices.size() > 1) least_gap = std::min(least_gap, c.lambda.gap);
  }
  const MinEigen whole = min_eigenvalue(a);
  Json residuals = {{"eigen_residual", worst_residual}};
  if (std::isfinite(least_gap)) residuals["eigen_gap"] = least_gap;
  Json out = decision(type.aggregate ? to_string(*type.aggregate) : "mixed",
                      "Perron-Frobenius type of an irreducible Cartan matrix", residuals);
  out["lambda"] = whole.value;
  out["rank"] = numerical_rank(a, tol.eps);
  out["components"] = comps;
  return out;
}

Json conditions_json(const MirrorPolytope& p, const Tolerances& tol) {
  const CoxeterCheck check = check_coxeter_conditions(p, tol);
  Json ridges = Json::array();
  Json witnesses = Json::array();
  double angle_residual = 0.0;
  for (const RidgeAngle& r : check.ridges) {
    Json item = {{"facets", {p.facet(r.s).name, p.facet(r.t).name}}, {"product", r.product}};
    item["label"] = is_infinite(r.label) ? Json("inf") : Json(r.label);
    if (!is_infinite(r.label)) {
      const double c = std::cos(std::numbers::pi / r.label);
      angle_residual = std::max(angle_residual, std::abs(r.product - 4 * c * c));
    }
    if (!r.problem.empty()) witnesses.push_back(r.problem);
    ridges.push_back(std::move(item));
  }
  Json out = decision(check.ok() ? "holds" : "violated",
                      "reflections generate a Coxeter group: nonpositive Cartan entries, dihedral angles pi/m",
                      {{"angle_residual", angle_residual}}, witnesses);
  out["ridges"] = ridges;
  return out;
}

Json vertices_json(const MirrorPolytope& p, const PerfectionReport& perf) {
  Json out = Json::array();
  for (const VertexReport& r : perf.vertices) {
    Json item = {{"facets", names_json(p, r.facets)},
                 {"point", vec_json(p.face_lattice().vertices[static_cast<std::size_t>(r.vertex)])},
                 {"kind", to_string(r.kind)},
                 {"simple", r.simple},
                 {"link_rank", r.link_rank},
                 {"link_type", r.link_type.aggregate ? to_string(*r.link_type.aggregate) : "mixed"},
                 {"link_perfect", r.link_perfect}};
    if (!r.detail.empty()) item["detail"] = r.detail;
    out.push_back(std::move(item));
  }
  return out;
}

Json perfection_json(const MirrorPolytope& p, const PerfectionReport& perf) {
  Json witnesses = Json::array();
  for (const Subset& e : perf.infinite_edges) witnesses.push_back({{"infinite_edge", names_json(p, e)}});
  for (int v : perf.loxodromic_vertices)
    witnesses.push_back({{"loxodromic_vertex", names_json(p, perf.vertices[static_cast<std::size_t>(v)].facets)}});
  for (int v : perf.parabolic_vertices)
    witnesses.push_back({{"parabolic_vertex", names_json(p, perf.vertices[static_cast<std::size_t>(v)].facets)}});
  return decision(to_string(perf.level), "vertex links decide the perfection level", Json::object(), witnesses);
}

Json class_json(const PolytopeClass& pc) {
  Json out = decision(to_string(pc.kind), "elliptic, parabolic or loxodromic by type and rank of the Cartan matrix");
  out["description"] = pc.description;
  out["w_irreducible"] = pc.w_irreducible;
  if (pc.w_kind) out["w_kind"] = to_string(*pc.w_kind);
  if (!pc.w_name.empty()) out["w_name"] = pc.w_name;
  return out;
}

Json zariski_json(const MirrorPolytope& p, const RunConfig& config) {
  const std::string anchor = "the Zariski closure of an irreducible 2-perfect loxodromic group is SO(d,1) or SL(d+1)";
  return guarded(anchor, [&] {
    const ZariskiReport z = zariski_closure(p, config.tol, config.seed);
    Json out = decision(to_string(z.verdict), anchor, {{"invariance_residual", z.residual}});
    out["form_space_dim"] = z.form_space_dim;
    out["description"] = z.description;
    if (z.form) {
      out["witnesses"].push_back({{"form", mat_json(*z.form)}});
      out["negative_inside"] = z.negative_inside;
    }
    return out;
  });
}

Json rel_hyp_json(const MirrorPolytope& p, const CoxeterSystem& w, const PerfectionReport& perf,
                  const Tolerances& tol) {
  const std::string anchor = "Caprace criterion for relative hyperbolicity";
  return guarded(anchor, [&] {
    std::vector<Subset> peripherals;
    for (int v : perf.parabolic_vertices) peripherals.push_back(perf.vertices[static_cast<std::size_t>(v)].facets);
    const RelHypCheck c = relative_hyperbolicity_check(w, peripherals, tol.eps);
    Json witnesses = Json::array();
    for (const Subset& s : c.witness) witnesses.push_back(names_json(w, s));
    Json out = decision(c.holds ? "true" : "false", anchor, Json::object(), witnesses);
    Json per = Json::array();
    for (const Subset& s : peripherals) per.push_back(names_json(p, s));
    out["peripherals"] = per;
    if (!c.holds) {
      out["failed_condition"] = c.failed_condition;
      out["reason"] = c.reason;
    }
    return out;
  });
}

Json strict_json(const MirrorPolytope& p, const Tolerances& tol) {
  const std::string anchor = "strictly convex with C^1 boundary iff quasi-perfect and relatively hyperbolic";
  return guarded(anchor, [&] {
    const StrictConvexityReport r = strict_convexity(p, tol);
    Json witnesses = Json::array();
    for (const Subset& s : r.check.witness) witnesses.push_back(names_json(p, s));
    Json out = decision(r.strictly_convex ? "true" : "false", anchor, Json::object(), witnesses);
    out["c1_boundary"] = r.c1_boundary;
    out["gromov_hyperbolic"] = r.gromov_hyperbolic;
    out["reason"] = r.reason;
    return out;
  });
}

Json existence_json(const MirrorPolytope& p, const Tolerances& tol) {
  const std::string anchor =
      "a strictly convex invariant open set exists iff W is relatively hyperbolic to its parabolic vertex groups";
  return guarded(anchor, [&] {
    const StrictExistenceReport r = strictly_convex_invariant_set(p, tol);
    Json out = decision(to_string(r.verdict), anchor);
    out["reason"] = r.reason;
    if (r.truncated_strictly_convex) out["truncated_strictly_convex"] = *r.truncated_strictly_convex;
    return out;
  });
}

Json extremes_json(const MirrorPolytope& p, const Tolerances& tol) {
  const std::string anchor = "Omega_min = Omega_max iff the action has finite covolume";
  return guarded(anchor, [&] {
    const ExtremesReport r = invariant_convex_extremes(p, tol);
    Json witnesses = Json::array();
    for (int v : r.loxodromic_vertices) witnesses.push_back({{"loxodromic_vertex", names_json(p, p.face_lattice().vertex_facets[static_cast<std::size_t>(v)])}});
    Json out = decision(r.unique_invariant_domain ? "unique" : "not-unique", anchor, Json::object(), witnesses);
    out["description"] = r.description;
    return out;
  });
}

Json degenerate_json(const MirrorPolytope& p, const Tolerances& tol) {
  const std::string anchor = "classification of degenerate 2-perfect polytopes";
  return guarded(anchor, [&] {
    const DegenerateReport r = degenerate_classification(p, tol);
    Json out = decision(r.case_number == 0 ? "none" : "case " + std::to_string(r.case_number), anchor);
    out["description"] = r.description;
    return out;
  });
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write " + path);
    out << text;
    if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write " + path);
  }
  std::filesystem::rename(tmp, path);
}

CoxeterSystem coxeter_from_json(const Json& j) {
  try {
    const auto& labels = j.at("labels");
    if (!labels.is_array()) throw Error(ErrorCode::Parse, "labels must be a matrix");
    const std::size_t n = labels.size();
    std::vector<std::vector<Label>> m(n, std::vector<Label>(n));
    for (std::size_t i = 0; i < n; ++i) {
      if (!labels[i].is_array() || labels[i].size() != n) throw Error(ErrorCode::Parse, "labels must be square");
      for (std::size_t k = 0; k < n; ++k) {
        const Json& x = labels[i][k];
        if (x.is_string() && x.get<std::string>() == "inf") m[i][k] = kInfinity;
        else if (x.is_number_integer()) m[i][k] = x.get<int>();
        else throw Error(ErrorCode::Parse, "a label is an integer or \"inf\"");
      }
    }
    std::vector<std::string> names;
    if (j.contains("generators")) names = j.at("generators").get<std::vector<std::string>>();
    else
      for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i + 1));
    return CoxeterSystem(std::move(names), std::move(m));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("bad Coxeter system: ") + e.what());
  }
}

Json coxeter_to_json(const CoxeterSystem& sys) {
  Json labels = Json::array();
  for (int i = 0; i < sys.rank(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < sys.rank(); ++k) row.push_back(is_infinite(sys.label(i, k)) ? Json("inf") : Json(sys.label(i, k)));
    labels.push_back(row);
  }
  return {{"generators", sys.names()}, {"labels", labels}};
}

MirrorPolytope polytope_from_json(const Json& j, const Tolerances& tol) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "expected a JSON object");
  if (j.contains("fixture")) {
    if (!j["fixture"].is_string()) throw Error(ErrorCode::Parse, "fixture must be a name");
    return named_fixture(j["fixture"].get<std::string>());
  }
  if (j.contains("coxeter")) return tits_simplex(coxeter_from_json(j["coxeter"]), tol.eps);
  if (j.contains("labels")) return tits_simplex(coxeter_from_json(j), tol.eps);
  try {
    const int d = j.at("dim").get<int>();
    if (d < 0) throw Error(ErrorCode::Parse, "dim must be nonnegative");
    std::vector<Facet> facets;
    int k = 0;
    for (const Json& f : j.at("facets")) {
      ++k;
      Facet out;
      out.name = f.contains("name") ? f["name"].get<std::string>() : std::to_string(k);
      out.alpha = vec_from(f.at("alpha"), d + 1, "alpha of facet " + out.name);
      out.polar = vec_from(f.at("v"), d + 1, "v of facet " + out.name);
      facets.push_back(std::move(out));
    }
    return MirrorPolytope::build(d, std::move(facets), tol.eps);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("bad polytope: ") + e.what());
  }
}

Json polytope_to_json(const MirrorPolytope& p) {
  Json facets = Json::array();
  for (const Facet& f : p.facets()) facets.push_back({{"name", f.name}, {"alpha", vec_json(f.alpha)}, {"v", vec_json(f.polar)}});
  return {{"schema", kSchema}, {"dim", p.dim()}, {"facets", facets}};
}

Json classification_report(const MirrorPolytope& p, const RunConfig& config) {
  validate(config);
  const Tolerances& tol = config.tol;
  Json report = {{"schema", kSchema}, {"dim", p.dim()}};
  Json facets = Json::array();
  for (const Facet& f : p.facets()) facets.push_back({{"name", f.name}, {"polar", vec_json(f.polar.normalized())}});
  report["facets"] = facets;

  Json& dec = report["decisions"];
  dec["coxeter_conditions"] = conditions_json(p, tol);
  dec["cartan_type"] = cartan_json(p, tol);
  // Validation error with the offending ridge.
  const CoxeterSystem w = coxeter_system_of(p, tol);
  report["coxeter_system"] = coxeter_to_json(w);

  const PolytopeClass pc = polytope_class(p, tol);
  dec["polytope_class"] = class_json(pc);
  const PerfectionReport perf = perfection(p, tol);
  report["vertices"] = vertices_json(p, perf);
  dec["perfection"] = perfection_json(p, perf);

  const ActionReport action = action_classification(p, tol);
  dec["geometrically_finite"] = verdict_json(action.geometrically_finite, action.reason);
  dec["finite_covolume"] = verdict_json(action.finite_covolume, action.reason);
  dec["convex_cocompact"] = verdict_json(action.convex_cocompact, action.reason);
  dec["cocompact"] = verdict_json(action.cocompact, action.reason);
  dec["degenerate_case"] = degenerate_json(p, tol);
  dec["zariski_closure"] = zariski_json(p, config);
  dec["relative_hyperbolicity"] = rel_hyp_json(p, w, perf, tol);
  dec["strict_convexity"] = strict_json(p, tol);
  dec["strictly_convex_invariant_set"] = existence_json(p, tol);
  dec["invariant_convex_extremes"] = extremes_json(p, tol);
  return report;
}

Json tiling_stats(const TilingSnapshot& snapshot) {
  return {{"schema", kSchema},
          {"tiles", snapshot.tiles.size()},
          {"count_by_length", snapshot.count_by_length},
          {"pairs_checked", snapshot.pairs_checked},
          {"overlaps", 0},
          {"overlap_check", "passed"},
          {"affine_chart", snapshot.chart.has_value()},
          {"closed", snapshot.closed}};
}

DisplayProjection::DisplayProjection(const TilingSnapshot& snapshot) {
  if (snapshot.tiles.empty()) throw Error(ErrorCode::PreconditionUnmet, "empty tiling");
  if (snapshot.chart) {
    chart_.emplace(*snapshot.chart);
    return;
  }
  const auto& base = snapshot.tiles.front().vertices;
  center_ = Vec::Zero(base.front().size());
  for (const Vec& v : base) center_ += v.normalized();
  center_.normalize();
  basis_ = null_space(center_.transpose(), 1e-12);
}

std::vector<double> DisplayProjection::operator()(const Vec& x) const {
  Vec y;
  if (chart_) {
    y = chart_->to_chart(x);
  } else {
    const Vec u = x.normalized();
    y = basis_.transpose() * u / (1.0 + center_.dot(u));
  }
  return {y.data(), y.data() + y.size()};
}

std::string tiling_svg(const TilingSnapshot& snapshot, const std::vector<Vec>& limit_points) {
  const DisplayProjection proj(snapshot);
  std::vector<std::vector<std::array<double, 2>>> polys;
  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x, hi_x = -lo_x, hi_y = -lo_x;
  const auto grow = [&](double x, double y) {
    lo_x = std::min(lo_x, x);
    hi_x = std::max(hi_x, x);
    lo_y = std::min(lo_y, y);
    hi_y = std::max(hi_y, y);
  };
  for (const Tile& t : snapshot.tiles) {
    std::vector<std::array<double, 2>> pts;
    for (const Vec& v : t.vertices) {
      const auto c = proj(v);
      if (c.size() != 2) throw Error(ErrorCode::InvalidConfig, "SVG output needs a polygon (dimension 2)");
      if (!std::isfinite(c[0]) || !std::isfinite(c[1])) continue;
      pts.push_back({c[0], c[1]});
    }
    if (pts.size() < 2) continue;
    double cx = 0, cy = 0;
    for (const auto& q : pts) cx += q[0], cy += q[1];
    cx /= static_cast<double>(pts.size());
    cy /= static_cast<double>(pts.size());
    std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
      return std::atan2(a[1] - cy, a[0] - cx) < std::atan2(b[1] - cy, b[0] - cx);
    });
    for (const auto& q : pts) grow(q[0], q[1]);
    polys.push_back(std::move(pts));
  }
  std::vector<std::array<double, 2>> dots;
  for (const Vec& x : limit_points) {
    try {
      const auto c = proj(x);
      dots.push_back({c[0], c[1]});
      grow(c[0], c[1]);
    } catch (const Error&) {
    }
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  const double pad = 0.05 * span, stroke = span / 800.0;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(lo_x - pad) << ' ' << fmt(-hi_y - pad) << ' '
     << fmt(hi_x - lo_x + 2 * pad) << ' ' << fmt(hi_y - lo_y + 2 * pad) << "\" width=\"800\" height=\"800\">\n";
  os << "<g fill=\"none\" stroke=\"#234\" stroke-width=\"" << fmt(stroke) << "\">\n";
  for (std::size_t i = 0; i < polys.size(); ++i) {
    os << "<polygon" << (i == 0 ? " fill=\"#f2c14e\"" : "") << " points=\"";
    for (const auto& q : polys[i]) os << fmt(q[0]) << ',' << fmt(-q[1]) << ' ';
    os << "\"/>\n";
  }
  os << "</g>\n<g fill=\"#c0392b\">\n";
  for (const auto& q : dots) os << "<circle cx=\"" << fmt(q[0]) << "\" cy=\"" << fmt(-q[1]) << "\" r=\"" << fmt(2 * stroke) << "\"/>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string point_cloud_ply(const std::vector<std::vector<double>>& points) {
  std::ostringstream os;
  os << "ply\nformat ascii 1.0\nelement vertex " << points.size() << "\nproperty double x\nproperty double y\nproperty double z\nend_header\n";
  os << std::setprecision(12);
  for (const auto& p : points) {
    for (std::size_t i = 0; i < 3; ++i) os << (i < p.size() ? p[i] : 0.0) << (i == 2 ? '\n' : ' ');
  }
  return os.str();
}

std::string points_csv(const std::vector<Vec>& points, const std::vector<double>& residuals) {
  std::ostringstream os;
  os << std::setprecision(15);
  if (!points.empty()) {
    for (Eigen::Index i = 0; i < points.front().size(); ++i) os << (i ? "," : "") << 'x' << i;
    if (!residuals.empty()) os << ",residual";
    os << '\n';
  }
  for (std::size_t k = 0; k < points.size(); ++k) {
    for (Eigen::Index i = 0; i < points[k].size(); ++i) os << (i ? "," : "") << points[k](i);
    if (!residuals.empty()) os << ',' << residuals[k];
    os << '\n';
  }
  return os.str();
}

}  // namespace cvk
