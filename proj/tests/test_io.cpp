#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <random>

#include "doctest.h"
#include "fixtures_util.hpp"

#include "cvk/catalog.hpp"
#include "cvk/classify.hpp"
#include "cvk/errors.hpp"
#include "cvk/fixtures.hpp"
#include "cvk/io.hpp"

using namespace cvk;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::Parse;
}

// Same structure and strings; numbers agree to a relative tolerance.
bool close(const Json& a, const Json& b, double tol) {
  if (a.is_number() && b.is_number()) {
    const double x = a.get<double>(), y = b.get<double>();
    return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
  }
  if (a.type() != b.type() || a.size() != b.size()) return false;
  if (a.is_object()) {
    for (auto it = a.begin(); it != a.end(); ++it)
      if (!b.contains(it.key()) || !close(it.value(), b[it.key()], tol)) return false;
    return true;
  }
  if (a.is_array()) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!close(a[i], b[i], tol)) return false;
    return true;
  }
  return a == b;
}

}  // namespace

TEST_CASE("Coxeter JSON round trip") {
  const CoxeterSystem w = triangle_diagram(2, 3, kInfinity);
  const Json j = coxeter_to_json(w);
  CHECK(j["labels"][0][2] == "inf");
  CHECK(coxeter_from_json(j) == w);
  CHECK(polytope_from_json(j).facet_count() == 3);
  CHECK(polytope_from_json(Json{{"coxeter", j}}).facet_count() == 3);
}

TEST_CASE("polytope JSON round trip") {
  for (const char* name : {"prism", "quadrilateral", "cone-237"}) {
    const MirrorPolytope p = named_fixture(name);
    const MirrorPolytope q = polytope_from_json(parse_json(polytope_to_json(p).dump()));
    CHECK(max_abs(q.alphas() - p.alphas()) < 1e-15);
    CHECK(max_abs(q.polars() - p.polars()) < 1e-15);
    CHECK(q.facet_names() == p.facet_names());
  }
  CHECK(polytope_from_json(Json{{"fixture", "pentagon"}}).facet_count() == 5);
}

TEST_CASE("parse errors") {
  CHECK(code_of([] { parse_json("{\"dim\": 2, "); }) == ErrorCode::Parse);
  CHECK(code_of([] { polytope_from_json(Json::array()); }) == ErrorCode::Parse);
  CHECK(code_of([] { polytope_from_json(parse_json(R"({"dim": 1, "facets": [{"alpha": [1], "v": [2, 0]}]})")); }) ==
        ErrorCode::Parse);
  CHECK(code_of([] { coxeter_from_json(parse_json(R"({"labels": [[1, "x"], ["x", 1]]})")); }) == ErrorCode::Parse);
  CHECK(code_of([] { coxeter_from_json(parse_json(R"({"labels": [[1, 3], [2, 1]]})")); }) == ErrorCode::NotSymmetric);
  CHECK(code_of([] { polytope_from_json(Json{{"fixture", "nonesuch"}}); }) == ErrorCode::Parse);
  CHECK(code_of([] { read_json_file("/nonexistent/file.json"); }) == ErrorCode::Parse);
}

TEST_CASE("committed fixtures load and agree with the built-in constructions") {
  const fs::path dir = CVK_FIXTURE_DIR;
  int loaded = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().string());
    const MirrorPolytope p = polytope_from_json(read_json_file(entry.path().string()));
    CHECK(check_coxeter_conditions(p).ok());
    ++loaded;
  }
  CHECK(loaded > 100);
  const MirrorPolytope q = polytope_from_json(read_json_file((dir / "polytopes" / "quadrilateral.json").string()));
  CHECK(max_abs(q.cartan_matrix() - loxodromic_quadrilateral().cartan_matrix()) < 1e-12);
  for (const auto& e : spherical_catalog(8)) {
    const fs::path f = dir / "spherical" / (e.name + ".json");
    REQUIRE(fs::exists(f));
    CHECK(isomorphic(coxeter_from_json(read_json_file(f.string())["coxeter"]), e.system));
  }
}

TEST_CASE("classification report") {
  const Json r = classification_report(named_fixture("quadrilateral"), {});
  CHECK(r["schema"] == "cvk/1");
  const Json& d = r["decisions"];
  for (const char* key : {"coxeter_conditions", "cartan_type", "polytope_class", "perfection", "geometrically_finite",
                          "finite_covolume", "convex_cocompact", "cocompact", "zariski_closure", "strict_convexity",
                          "relative_hyperbolicity", "strictly_convex_invariant_set", "invariant_convex_extremes"}) {
    CAPTURE(key);
    REQUIRE(d.contains(key));
    CHECK(d[key].contains("verdict"));
    CHECK(d[key]["theorem"].is_string());
    CHECK(d[key].contains("residuals"));
    CHECK(d[key]["witnesses"].is_array());
  }
  CHECK(d["convex_cocompact"]["verdict"] == "true");
  CHECK(d["finite_covolume"]["verdict"] == "false");
  CHECK(r["vertices"].size() == 4);
  // not-applicable sections explain themselves
  const Json a = classification_report(named_fixture("tits-3-3-3"), {});
  CHECK(a["decisions"]["cocompact"]["verdict"] == "not-applicable");
  CHECK(a["decisions"]["zariski_closure"]["reason"].is_string());
}

TEST_CASE("reports do not depend on the normalization of facet pairs") {
  std::mt19937_64 rng(6);
  for (const char* name : {"prism", "quadrilateral", "deformed-334"}) {
    CAPTURE(name);
    const MirrorPolytope p = named_fixture(name);
    const Json a = classification_report(p, {});
    const Json b = classification_report(rescaled(p, rng), {});
    CHECK(close(a, b, 1e-6));
  }
}

TEST_CASE("renderers") {
  const MirrorPolytope p = named_fixture("tits-2-3-7");
  const TilingSnapshot snap = orbit_tiles(p, 3);
  const std::string svg = tiling_svg(snap);
  CHECK(svg.find("<svg") == 0);
  std::size_t polygons = 0;
  for (std::size_t at = svg.find("<polygon"); at != std::string::npos; at = svg.find("<polygon", at + 1)) ++polygons;
  CHECK(polygons == snap.tiles.size());
  const Json stats = tiling_stats(snap);
  CHECK(stats["overlaps"] == 0);
  CHECK(stats["count_by_length"].size() == 4);

  const std::string ply = point_cloud_ply({{0, 0, 0}, {1, 2, 3}});
  CHECK(ply.find("element vertex 2") != std::string::npos);
  const std::string csv = points_csv({Vec::Ones(3)}, {0.5});
  CHECK(csv.rfind("x0,x1,x2,residual\n", 0) == 0);

  // elliptic tilings have no affine chart and fall back to a stereographic view
  const TilingSnapshot sphere = orbit_tiles(named_fixture("tits-A_3"), 3);
  CHECK_FALSE(DisplayProjection(sphere).uses_chart());
  CHECK(tiling_svg(sphere).find("<polygon") != std::string::npos);
}
