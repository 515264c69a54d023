// One line per acceptance criterion; exit status is the number of failures.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"

#include "cvk/catalog.hpp"
#include "cvk/classify.hpp"
#include "cvk/errors.hpp"
#include "cvk/fixtures.hpp"
#include "cvk/hilbert.hpp"
#include "cvk/io.hpp"
#include "cvk/orbit.hpp"
#include "cvk/truncate.hpp"

using namespace cvk;
using oracle::kInf;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "failed: ";
      else detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

CoxeterSystem system_of(const oracle::Labels& m) {
  std::vector<std::vector<Label>> l(m.size(), std::vector<Label>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) l[i][j] = m[i][j] == kInf ? kInfinity : m[i][j];
  return CoxeterSystem(l);
}

oracle::Labels chain(const std::vector<int>& labels) {
  std::vector<std::tuple<int, int, int>> e;
  for (std::size_t i = 0; i < labels.size(); ++i) e.emplace_back(i, i + 1, labels[i]);
  return oracle::diagram(static_cast<int>(labels.size()) + 1, e);
}

// Diagrams typed from the standard tables: name, labels.
std::vector<std::pair<std::string, oracle::Labels>> spherical_table() {
  std::vector<std::pair<std::string, oracle::Labels>> out;
  for (int n = 1; n <= 8; ++n) out.emplace_back("A_" + std::to_string(n), chain(std::vector<int>(n - 1, 3)));
  for (int n = 2; n <= 8; ++n) {
    std::vector<int> l(n - 1, 3);
    l[0] = 4;
    out.emplace_back("B_" + std::to_string(n), chain(l));
  }
  for (int n = 4; n <= 8; ++n) {
    auto m = chain(std::vector<int>(n - 2, 3));
    m = oracle::diagram(n, {});
    for (int i = 0; i + 1 < n - 1; ++i) m[i][i + 1] = m[i + 1][i] = 3;
    m[n - 1][n - 3] = m[n - 3][n - 1] = 3;
    out.emplace_back("D_" + std::to_string(n), m);
  }
  for (int n = 6; n <= 8; ++n) {
    auto m = oracle::diagram(n, {});
    for (int i = 0; i + 1 < n - 1; ++i) m[i][i + 1] = m[i + 1][i] = 3;
    m[n - 1][2] = m[2][n - 1] = 3;
    out.emplace_back("E_" + std::to_string(n), m);
  }
  out.emplace_back("F_4", chain({3, 4, 3}));
  out.emplace_back("H_3", chain({5, 3}));
  out.emplace_back("H_4", chain({5, 3, 3}));
  for (int p = 5; p <= 12; ++p) out.emplace_back("I_2(" + std::to_string(p) + ")", chain({p}));
  return out;
}

std::vector<std::pair<std::string, oracle::Labels>> affine_table() {
  std::vector<std::pair<std::string, oracle::Labels>> out;
  out.emplace_back("~A_1", chain({kInf}));
  for (int n = 2; n <= 8; ++n) {
    auto m = chain(std::vector<int>(n, 3));
    m[0][n] = m[n][0] = 3;
    out.emplace_back("~A_" + std::to_string(n), m);
  }
  out.emplace_back("~B_2", chain({4, 4}));
  out.emplace_back("~G_2", chain({6, 3}));
  for (int n = 3; n <= 8; ++n) {
    // B_n chain with a fork at the far end
    auto m = oracle::diagram(n + 1, {});
    for (int i = 0; i + 1 < n; ++i) m[i][i + 1] = m[i + 1][i] = 3;
    m[0][1] = m[1][0] = 4;
    m[n][n - 2] = m[n - 2][n] = 3;
    out.emplace_back("~B_" + std::to_string(n), m);
    std::vector<int> c(n, 3);
    c.front() = c.back() = 4;
    out.emplace_back("~C_" + std::to_string(n), chain(c));
  }
  for (int n = 4; n <= 8; ++n) {
    auto m = oracle::diagram(n + 1, {});
    for (int i = 0; i + 1 < n - 1; ++i) m[i][i + 1] = m[i + 1][i] = 3;
    m[n - 1][1] = m[1][n - 1] = 3;
    m[n][n - 3] = m[n - 3][n] = 3;
    out.emplace_back("~D_" + std::to_string(n), m);
  }
  out.emplace_back("~F_4", chain({3, 4, 3, 3}));
  {
    auto m = chain({3, 3, 3, 3});
    m = oracle::diagram(7, {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {2, 5, 3}, {5, 6, 3}});
    out.emplace_back("~E_6", m);
  }
  out.emplace_back("~E_7", oracle::diagram(8, {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, 3}, {3, 7, 3}}));
  out.emplace_back("~E_8",
                   oracle::diagram(9, {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {4, 5, 3}, {5, 6, 3}, {6, 7, 3}, {2, 8, 3}}));
  return out;
}

void criterion_1(Outcome& o) {
  int n = 0;
  for (const auto& [name, labels] : spherical_table()) {
    const DiagramClass c = classify_irreducible(system_of(labels), 1e-9);
    o.require(c.kind == DiagramKind::Spherical && c.name == name, name + " classified " + to_string(c.kind) + " " + c.name);
    ++n;
  }
  for (const auto& [name, labels] : affine_table()) {
    const DiagramClass c = classify_irreducible(system_of(labels), 1e-9);
    o.require(c.kind == DiagramKind::Affine && c.name == name, name + " classified " + to_string(c.kind) + " " + c.name);
    ++n;
  }
  o.detail << n << " diagrams";
}

void criterion_2(Outcome& o) {
  std::vector<CoxeterSystem> systems;
  for (const auto& [name, labels] : spherical_table()) systems.push_back(system_of(labels));
  for (const auto& [name, labels] : affine_table()) systems.push_back(system_of(labels));
  std::mt19937_64 rng(2024);
  const int choices[] = {2, 2, 3, 3, 4, 5, 6, 7, 8, 12, kInf};
  for (int k = 0; k < 50; ++k) {
    const int rank = 2 + static_cast<int>(rng() % 4);
    oracle::Labels m(rank, std::vector<int>(rank, 1));
    for (int i = 0; i < rank; ++i)
      for (int j = i + 1; j < rank; ++j) m[i][j] = m[j][i] = choices[rng() % 11];
    systems.push_back(system_of(m));
  }
  double worst = 0.0;
  for (const CoxeterSystem& w : systems) {
    const MirrorPolytope p = tits_simplex(w);
    o.require(coxeter_system_of(p).same_labels(w), "round trip changed labels");
    worst = std::max(worst, max_abs(p.cartan_matrix() - gram_matrix(w)));
  }
  o.require(worst <= 1e-9, "Cartan matrix differs from Gram matrix");
  o.detail << systems.size() << " systems, max |A - G| = " << worst;
}

void criterion_3(Outcome& o) {
  const MirrorPolytope affine = tits_simplex(triangle_diagram(3, 3, 3));
  const PolytopeClass pa = polytope_class(affine);
  const double lambda = min_eigenvalue(affine.cartan_matrix()).value;
  o.require(pa.kind == PolytopeKind::Parabolic, "(3,3,3) not parabolic");
  o.require(std::abs(lambda) <= 1e-9 && pa.rank == 2, "(3,3,3) lambda or rank");

  const MirrorPolytope hyp = tits_simplex(triangle_diagram(2, 3, 7));
  const ActionReport a = action_classification(hyp);
  o.require(polytope_class(hyp).kind == PolytopeKind::Loxodromic, "(2,3,7) not loxodromic");
  o.require(perfection(hyp).level == Perfection::Perfect, "(2,3,7) not perfect");
  o.require(a.geometrically_finite.value == Tri::True && a.finite_covolume.value == Tri::True &&
                a.convex_cocompact.value == Tri::True && a.cocompact.value == Tri::True,
            "(2,3,7) action not all true");

  const MirrorPolytope ideal = tits_simplex(triangle_diagram(2, 3, kInfinity));
  const ActionReport b = action_classification(ideal);
  o.require(perfection(ideal).level == Perfection::QuasiPerfect, "(2,3,inf) not quasi-perfect");
  o.require(b.finite_covolume.value == Tri::True, "(2,3,inf) finite covolume");
  o.require(b.convex_cocompact.value == Tri::False, "(2,3,inf) convex cocompact");
  o.detail << "lambda(3,3,3) = " << lambda;
}

void criterion_4(Outcome& o) {
  const MirrorPolytope q = loxodromic_quadrilateral();
  const TruncationResult r = truncate_all(q);
  const MirrorPolytope& t = r.polytope;
  o.require(t.facet_count() == 5 && t.face_lattice().vertices.size() == 5, "truncation is not a pentagon");
  int new_ridges = 0;
  double worst = 0.0;
  for (const RidgeAngle& ridge : check_coxeter_conditions(t).ridges)
    if (std::find(r.new_facets.begin(), r.new_facets.end(), ridge.s) != r.new_facets.end() ||
        std::find(r.new_facets.begin(), r.new_facets.end(), ridge.t) != r.new_facets.end()) {
      ++new_ridges;
      worst = std::max(worst, std::abs(ridge.product));
    }
  o.require(new_ridges == 2, "expected 2 new ridges");
  o.require(worst <= 1e-9, "new ridges are not right angles");
  o.require(perfection(t).level == Perfection::Perfect, "truncation not perfect");
  const ActionReport a = action_classification(q);
  o.require(a.convex_cocompact.value == Tri::True, "quadrilateral not convex cocompact");
  o.require(a.finite_covolume.value == Tri::False, "quadrilateral has finite covolume");
  o.detail << "max new ridge product " << worst;
}

void criterion_5(Outcome& o) {
  const std::filesystem::path dir = std::filesystem::path(CVK_FIXTURE_DIR) / "quasi-lanner";
  int fixtures = 0;
  double worst_form = 0.0, worst_limit = 0.0;
  std::size_t fewest = SIZE_MAX;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    const MirrorPolytope p = polytope_from_json(read_json_file(f.string()));
    std::vector<Mat> gens;
    for (int s = 0; s < p.facet_count(); ++s) gens.push_back(p.reflection(s));
    const auto forms = invariant_quadratic_forms(gens);
    const std::string name = f.stem().string();
    o.require(forms.size() == 1, name + ": form space dimension " + std::to_string(forms.size()));
    if (forms.size() != 1) continue;
    const Signature sg = signature(forms.front());
    o.require(sg.zero == 0 && std::min(sg.positive, sg.negative) == 1 && std::max(sg.positive, sg.negative) == p.dim(),
              name + ": not of signature (d,1)");
    for (const Mat& g : gens) worst_form = std::max(worst_form, max_abs(g.transpose() * forms.front() * g - forms.front()));
    const LimitSetSample s = limit_set_approx(p, 200, 6, 14, 1);
    fewest = std::min(fewest, s.points.size());
    for (const Vec& x : s.points) worst_limit = std::max(worst_limit, quadric_residual(forms.front(), x));
    ++fixtures;
  }
  o.require(fixtures > 0, "no quasi-Lanner fixtures found");
  o.require(worst_form <= 1e-9, "form invariance residual");
  o.require(fewest >= 200, "fewer than 200 bi-proximal points");
  o.require(worst_limit <= 1e-6, "limit set leaves the quadric");
  o.detail << fixtures << " triangles, >= " << fewest << " points each, form residual " << worst_form << ", limit residual " << worst_limit;
}

void criterion_6(Outcome& o) {
  const CoxeterSystem prism = system_of(
      oracle::diagram(5, {{0, 1, 3}, {0, 2, 3}, {1, 2, 3}, {0, 4, 3}, {2, 4, 3}, {3, 4, kInf}}));
  const RelHypCheck c = relative_hyperbolicity_check(prism, {{0, 2, 4}});
  o.require(!c.holds, "prism system relatively hyperbolic");
  bool witness_ok = false;
  for (const Subset& w : c.witness)
    if (w.size() == 3 && w == Subset{0, 1, 2} && is_affine(prism, w)) witness_ok = true;
  o.require(witness_ok, "no affine rank-3 witness {1,2,3}");
  o.require(relative_hyperbolicity_check(triangle_diagram(2, 3, 7), {}).holds, "(2,3,7) not hyperbolic");
  o.require(!strict_convexity(parabolic_prism()).strictly_convex, "prism strictly convex");
  o.require(strict_convexity(tits_simplex(triangle_diagram(2, 3, 7))).strictly_convex, "(2,3,7) not strictly convex");
  o.detail << "prism witness " << (c.witness.empty() ? "-" : to_string(c.witness.front()));
}

void criterion_7(Outcome& o) {
  using oracle::diagram;
  const std::vector<std::pair<const char*, oracle::Labels>> cases = {
      {"tits-2-3-7", diagram(3, {{0, 1, 2}, {1, 2, 3}, {0, 2, 7}})},
      {"tits-2-4-5", diagram(3, {{0, 1, 2}, {1, 2, 4}, {0, 2, 5}})},
      {"pentagon", diagram(5, {{0, 2, kInf}, {0, 3, kInf}, {1, 3, kInf}, {1, 4, kInf}, {2, 4, kInf}})}};
  for (const auto& [name, labels] : cases) {
    const Enumeration e = enumerate_group(named_fixture(name), 8);
    const auto want = oracle::coxeter_word_counts(labels, 8).per_length;
    o.require(e.count_by_length == want, std::string(name) + " counts differ");
    o.detail << name << " " << std::accumulate(want.begin(), want.end(), std::size_t{0}) << " ";
  }
}

void criterion_8(Outcome& o) {
  const QuadricDomain unit(Mat::Identity(2, 2), Vec::Zero(2), -1.0);
  double worst_disk = 0.0;
  for (int k = 1; k <= 9; ++k) {
    const double t = k / 10.0;
    Vec x = Vec::Zero(2);
    x(0) = t;
    worst_disk = std::max(worst_disk, std::abs(hilbert_distance(unit, Vec::Zero(2), x) - 0.5 * std::log((1 + t) / (1 - t))));
  }
  o.require(worst_disk <= 1e-9, "disk distance");

  const MirrorPolytope p = tits_simplex(triangle_diagram(2, 3, 7));
  const AffineChart chart(containing_affine_chart(p));
  const TilingSnapshot snap = orbit_tiles(p, 8);
  std::vector<Vec> hull_points;
  for (const Tile& t : snap.tiles)
    for (const Vec& v : t.vertices) hull_points.push_back(chart.to_chart(v));
  const HullDomain2D hull(hull_points);
  std::vector<Vec> inside;
  std::mt19937_64 rng(8);
  for (const Vec& x : interior_samples(p, 60, 3)) {
    const Mat& g = snap.tiles[rng() % snap.tiles.size()].matrix;
    const Vec y = chart.to_chart(g * x);
    if (hull.contains(y)) inside.push_back(y);
  }
  o.require(inside.size() >= 20, "too few interior samples in the hull");
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const Vec& a = inside[rng() % inside.size()];
    const Vec& b = inside[rng() % inside.size()];
    const Vec& c = inside[rng() % inside.size()];
    if (hilbert_distance(hull, a, c) > hilbert_distance(hull, a, b) + hilbert_distance(hull, b, c) + 1e-9) ++violations;
  }
  o.require(violations == 0, std::to_string(violations) + " triangle inequality violations");

  const ZariskiReport z = zariski_closure(p);
  const QuadricDomain omega = ellipsoid_in_chart(*z.form, chart);
  const Enumeration e = enumerate_group(p, 8);
  const std::vector<Vec> samples = interior_samples(p, 50, 5);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Mat& g = e.elements[rng() % e.elements.size()].matrix;
    const Vec& a = samples[rng() % samples.size()];
    const Vec& b = samples[rng() % samples.size()];
    worst = std::max(worst, std::abs(hilbert_distance(omega, chart.to_chart(g * a), chart.to_chart(g * b)) -
                                     hilbert_distance(omega, chart.to_chart(a), chart.to_chart(b))));
  }
  o.require(worst <= 1e-6, "distance not invariant");
  o.detail << "disk error " << worst_disk << ", 1000 triples over " << inside.size() << " points, invariance residual "
           << worst;
}

void criterion_9(Outcome& o) {
  std::size_t tiles = 0;
  for (const char* name : {"tits-2-3-7", "tits-2-4-5", "pentagon", "quadrilateral"}) {
    try {
      tiles += orbit_tiles(named_fixture(name), 8).tiles.size();
    } catch (const Error& e) {
      o.require(false, std::string(name) + ": " + e.what());
    }
  }
  const MirrorPolytope sphere = named_fixture("tits-A_3");
  const Enumeration e = enumerate_group(sphere, 8);
  o.require(e.exhausted && e.elements.size() == 24, "A_3 did not close with 24 elements");
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  int covered = 0;
  for (int i = 0; i < 100; ++i) {
    Vec x(4);
    for (int k = 0; k < 4; ++k) x(k) = g(rng);
    covered += orbit_covers(sphere, e, x.normalized());
  }
  o.require(covered == 100, std::to_string(100 - covered) + " sphere points uncovered");
  o.detail << tiles << " tiles checked, " << covered << "/100 sphere points covered";
}

}  // namespace

int main() {
  const std::vector<std::function<void(Outcome&)>> criteria = {criterion_1, criterion_2, criterion_3,
                                                               criterion_4, criterion_5, criterion_6,
                                                               criterion_7, criterion_8, criterion_9};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i](o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail.str() << ")" << std::endl;
  }
  return failures;
}
