#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"

#include "cvk/catalog.hpp"
#include "cvk/classify.hpp"
#include "cvk/errors.hpp"
#include "cvk/fixtures.hpp"
#include "cvk/orbit.hpp"

using namespace cvk;
using oracle::kInf;

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

struct Case {
  const char* fixture;
  oracle::Labels labels;
  int depth;
};

std::vector<Case> cases() {
  using oracle::diagram;
  return {
      {"tits-2-3-7", diagram(3, {{0, 1, 2}, {1, 2, 3}, {0, 2, 7}}), 8},
      {"tits-2-4-5", diagram(3, {{0, 1, 2}, {1, 2, 4}, {0, 2, 5}}), 8},
      {"tits-2-3-inf", diagram(3, {{0, 1, 2}, {1, 2, 3}, {0, 2, kInf}}), 8},
      {"tits-3-3-3", diagram(3, {{0, 1, 3}, {1, 2, 3}, {0, 2, 3}}), 8},
      {"pentagon", diagram(5, {{0, 2, kInf}, {0, 3, kInf}, {1, 3, kInf}, {1, 4, kInf}, {2, 4, kInf}}), 8},
      {"quadrilateral", diagram(4, {{0, 2, kInf}, {1, 3, kInf}, {0, 3, kInf}}), 8},
      {"deformed-334", diagram(3, {{0, 1, 3}, {1, 2, 3}, {0, 2, 4}}), 8},
      {"prism", diagram(5, {{0, 1, 3}, {0, 2, 3}, {1, 2, 3}, {0, 4, 3}, {2, 4, 3}, {3, 4, kInf}}), 6},
      {"tits-A_3", diagram(3, {{0, 1, 3}, {1, 2, 3}}), 8},
  };
}

}  // namespace

TEST_CASE("element counts per length match the word-problem oracle") {
  for (const Case& c : cases()) {
    CAPTURE(c.fixture);
    const Enumeration e = enumerate_group(named_fixture(c.fixture), c.depth);
    const oracle::WordCounts want = oracle::coxeter_word_counts(c.labels, c.depth);
    CHECK(e.count_by_length == want.per_length);
  }
}

TEST_CASE("listed words are the lexicographically least reduced words") {
  for (const Case& c : cases()) {
    CAPTURE(c.fixture);
    const int depth = std::min(c.depth, 6);
    const Enumeration e = enumerate_group(named_fixture(c.fixture), depth);
    const oracle::WordCounts want = oracle::coxeter_word_counts(c.labels, depth);
    std::vector<std::set<oracle::Word>> got(want.least_words.size());
    for (const GroupElement& g : e.elements) got[g.word.size()].insert(g.word);
    CHECK(got == want.least_words);
    // and they come sorted by length, then word
    for (std::size_t i = 1; i < e.elements.size(); ++i) {
      const auto& a = e.elements[i - 1].word;
      const auto& b = e.elements[i].word;
      CHECK((a.size() < b.size() || (a.size() == b.size() && a < b)));
    }
  }
}

TEST_CASE("word matrices agree with enumeration") {
  const MirrorPolytope p = named_fixture("tits-2-3-7");
  const Enumeration e = enumerate_group(p, 5);
  for (const GroupElement& g : e.elements) CHECK(max_abs(word_matrix(p, g.word) - g.matrix) < 1e-9);
}

TEST_CASE("finite groups close up") {
  struct F {
    const char* name;
    std::size_t order;
  };
  for (const F& f : {F{"tits-A_3", 24}, F{"tits-B_3", 48}, F{"tits-D_4", 192}, F{"tits-A_4", 120}}) {
    CAPTURE(std::string(f.name));
    const Enumeration e = enumerate_group(named_fixture(f.name), 14);
    CHECK(e.exhausted);
    CHECK(e.elements.size() == f.order);
  }
  // the longest element of H_3 has length 15, one past the cap
  const Enumeration h3 = enumerate_group(named_fixture("tits-H_3"), kMaxWordLength);
  CHECK_FALSE(h3.exhausted);
  CHECK(h3.elements.size() == 119);
}

TEST_CASE("elliptic tilings cover the sphere") {
  const MirrorPolytope p = named_fixture("tits-A_3");
  const Enumeration e = enumerate_group(p, 8);
  REQUIRE(e.exhausted);
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  for (int i = 0; i < 100; ++i) {
    Vec x(4);
    for (int k = 0; k < 4; ++k) x(k) = g(rng);
    CHECK(orbit_covers(p, e, x.normalized(), 1e-9));
  }
}

TEST_CASE("tilings have disjoint interiors") {
  for (const char* name : {"tits-2-3-7", "quadrilateral", "pentagon", "prism", "deformed-334", "tits-A_3", "tits-3-3-3"}) {
    CAPTURE(name);
    const int depth = std::string(name) == "prism" ? 5 : 7;
    TilingSnapshot snap;
    CHECK_NOTHROW(snap = orbit_tiles(named_fixture(name), depth));
    CHECK(snap.tiles.size() == std::accumulate(snap.count_by_length.begin(), snap.count_by_length.end(), std::size_t{0}));
    CHECK(snap.pairs_checked > 0);
  }
}

TEST_CASE("a non-discrete dihedral group is caught") {
  // mirrors at angle 2 pi / 5: the images of the segment overlap
  const double c = std::cos(2 * std::numbers::pi / 5);
  Mat a(2, 2);
  a << 2, -2 * c, -2 * c, 2;
  std::vector<Facet> facets = {{"1", Vec::Unit(2, 0), a.col(0)}, {"2", Vec::Unit(2, 1), a.col(1)}};
  const MirrorPolytope seg = MirrorPolytope::build(1, facets);
  CHECK(code_of([&] { orbit_tiles(seg, 6); }) == ErrorCode::OverlapDetected);
}

TEST_CASE("dedup refuses near-coincident matrices") {
  Mat g = Mat::Identity(3, 3);
  g(0, 0) = -1;
  Mat h = g;
  h(1, 2) = 1e-7;
  CHECK(code_of([&] { enumerate_group(std::vector<Mat>{g, h}, 2); }) == ErrorCode::DedupAmbiguity);
}

TEST_CASE("word length cap") {
  CHECK(code_of([] { enumerate_group(named_fixture("tits-2-3-7"), kMaxWordLength + 1); }) == ErrorCode::CapExceeded);
}

TEST_CASE("enumeration is reproducible") {
  const MirrorPolytope p = named_fixture("pentagon");
  const Enumeration a = enumerate_group(p, 6);
  const Enumeration b = enumerate_group(p, 6);
  REQUIRE(a.elements.size() == b.elements.size());
  for (std::size_t i = 0; i < a.elements.size(); ++i) CHECK(a.elements[i].word == b.elements[i].word);
}

TEST_CASE("limit set points lie on the invariant quadric") {
  for (const char* name : {"tits-2-3-7", "tits-2-3-inf", "pentagon", "quadrilateral"}) {
    CAPTURE(name);
    const MirrorPolytope p = named_fixture(name);
    const ZariskiReport z = zariski_closure(p);
    REQUIRE(z.form);
    const LimitSetSample s = limit_set_approx(p, 200, 6, 14, 3);
    CHECK(s.points.size() == 200);
    double worst = 0.0;
    for (const Vec& x : s.points) worst = std::max(worst, quadric_residual(*z.form, x));
    CHECK(worst <= 1e-6);
    const Vec c = containing_affine_chart(p);
    for (const Vec& x : s.points) CHECK(c.dot(x) == doctest::Approx(-1.0));
  }
}

TEST_CASE("limit set refusals") {
  CHECK(code_of([] { limit_set_approx(named_fixture("tits-A_3"), 10, 2, 6); }) == ErrorCode::NoProximalFound);
  CHECK(code_of([] { limit_set_approx(named_fixture("tits-3-3-3"), 10, 2, 6); }) == ErrorCode::PreconditionUnmet);
  CHECK(code_of([] { limit_set_approx(named_fixture("tits-2-3-7"), 10, 0, 6); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("Omega_max half-spaces contain P") {
  const MirrorPolytope p = named_fixture("quadrilateral");
  const LimitSetSample s = limit_set_approx(p, 60, 6, 12, 5);
  const std::vector<Vec> halfspaces = omega_max_approx(p, s);
  CHECK_FALSE(halfspaces.empty());
  for (const Vec& x : interior_samples(p, 50, 8)) CHECK(inside_halfspaces(halfspaces, x, 1e-12));
}
