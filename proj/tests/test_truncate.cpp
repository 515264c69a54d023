#include <algorithm>
#include <functional>

#include "doctest.h"

#include "cvk/catalog.hpp"
#include "cvk/classify.hpp"
#include "cvk/errors.hpp"
#include "cvk/fixtures.hpp"
#include "cvk/truncate.hpp"

using namespace cvk;

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

int vertex_with(const MirrorPolytope& p, const Subset& facets) {
  const auto& vf = p.face_lattice().vertex_facets;
  const auto it = std::find(vf.begin(), vf.end(), facets);
  REQUIRE(it != vf.end());
  return static_cast<int>(it - vf.begin());
}

MirrorPolytope cone_over_pentagon() { return cone_over(right_angled_pentagon()); }

}  // namespace

TEST_CASE("truncating the quadrilateral gives a right-angled pentagon") {
  const MirrorPolytope q = loxodromic_quadrilateral();
  const TruncationResult r = truncate_all(q);
  const MirrorPolytope& t = r.polytope;
  CHECK(t.facet_count() == 5);
  REQUIRE(r.new_facets.size() == 1);
  const int nf = r.new_facets.front();
  CHECK(t.facet(nf).name == "t14");
  const CoxeterCheck check = check_coxeter_conditions(t);
  int new_ridges = 0;
  for (const RidgeAngle& ridge : check.ridges)
    if (ridge.s == nf || ridge.t == nf) {
      ++new_ridges;
      CHECK(ridge.product <= 1e-9);
      CHECK(ridge.label == 2);
    }
  CHECK(new_ridges == 2);
  CHECK(perfection(t).level == Perfection::Perfect);
  // the truncated quadrilateral is the pentagon it was cut from, up to a
  // projective map: same Coxeter system
  CHECK(isomorphic(coxeter_system_of(t), coxeter_system_of(right_angled_pentagon())));
}

TEST_CASE("single-vertex truncation and its plan") {
  const MirrorPolytope q = loxodromic_quadrilateral();
  const int v = vertex_with(q, {0, 3});
  CHECK(is_simple_vertex(q, v));
  const TruncationPlan plan = truncability(q, v);
  CHECK(plan.facets == Subset{0, 3});
  CHECK(plan.covector.dot(plan.polar) == doctest::Approx(2.0));
  for (int s : plan.facets) CHECK(std::abs(plan.covector.dot(q.facet(s).polar)) < 1e-9);
  const MirrorPolytope t = truncate_vertex(q, plan);
  CHECK(t.face_lattice().vertices.size() == 5);
}

TEST_CASE("refusals") {
  SUBCASE("elliptic vertex") {
    const MirrorPolytope q = loxodromic_quadrilateral();
    CHECK(code_of([&] { truncability(q, vertex_with(q, {0, 1})); }) == ErrorCode::NotLoxodromic);
  }
  SUBCASE("non-simple vertex") {
    const MirrorPolytope c = cone_over_pentagon();
    const int apex = vertex_with(c, {0, 1, 2, 3, 4});
    CHECK_FALSE(is_simple_vertex(c, apex));
    CHECK(code_of([&] { truncability(c, apex); }) == ErrorCode::NotSimple);
    CHECK(code_of([&] { truncate_all(c); }) == ErrorCode::NotSimple);
  }
  SUBCASE("cone apex") {
    const MirrorPolytope c = named_fixture("cone-237");
    const int apex = vertex_with(c, {0, 1, 2});
    CHECK(code_of([&] { truncability(c, apex); }) == ErrorCode::ConeException);
  }
  SUBCASE("missing vertex") {
    CHECK(code_of([] { truncability(loxodromic_quadrilateral(), 99); }) == ErrorCode::NotAVertex);
  }
}

TEST_CASE("polytopes without loxodromic vertices are unchanged") {
  for (const char* name : {"tits-2-3-7", "prism", "tits-2-3-inf"}) {
    const MirrorPolytope p = named_fixture(name);
    const TruncationResult r = truncate_all(p);
    CHECK(r.new_facets.empty());
    CHECK(r.polytope.facet_count() == p.facet_count());
  }
}

TEST_CASE("three pairwise ultraparallel mirrors truncate to a right-angled hexagon") {
  Mat a(3, 3);
  a << 2, -2.5, -2.5, -2.5, 2, -2.5, -2.5, -2.5, 2;
  const MirrorPolytope p = polytope_from_cartan(a);
  const PerfectionReport perf = perfection(p);
  CHECK(perf.loxodromic_vertices.size() == 3);
  CHECK(perf.level == Perfection::TwoPerfect);
  const TruncationResult r = truncate_all(p);
  CHECK(r.polytope.facet_count() == 6);
  CHECK(r.new_facets.size() == 3);
  CHECK(perfection(r.polytope).level == Perfection::Perfect);
  const CoxeterSystem w = coxeter_system_of(r.polytope);
  for (const auto& [s, t] : adjacent_pairs(r.polytope)) CHECK(w.label(s, t) == 2);
}
