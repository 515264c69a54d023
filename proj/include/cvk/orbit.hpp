#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cvk/config.hpp"
#include "cvk/polytope.hpp"

namespace cvk {

struct GroupElement {
  std::vector<int> word;  // lexicographically least reduced word, letters are facet indices
  Mat matrix;
};

struct Enumeration {
  std::vector<GroupElement> elements;  // ordered by length, then word
  std::vector<std::size_t> count_by_length;
  bool exhausted = false;  // the group is finite and fully listed
};

// Breadth-first enumeration of the words of length <= max_length in the
// generators. Products closer than tol.audit (relative, max norm) are one
// element; products within tol.grid but not within tol.audit abort with
// DedupAmbiguity. Throws CapExceeded past kMaxWordLength or max_elements.
Enumeration enumerate_group(const std::vector<Mat>& generators, int max_length, const Tolerances& tol = {},
                            std::size_t max_elements = 4'000'000);
Enumeration enumerate_group(const MirrorPolytope& p, int max_length, const Tolerances& tol = {},
                            std::size_t max_elements = 4'000'000);

struct Tile {
  std::vector<int> word;
  Mat matrix;
  std::vector<Vec> vertices;  // images of the vertices of P
};

struct TilingSnapshot {
  std::vector<Tile> tiles;
  std::vector<Vec> hull_sample;  // images of interior sample points
  std::vector<std::size_t> count_by_length;
  std::optional<Vec> chart;      // covector of the affine chart when P has negative type
  std::size_t pairs_checked = 0;
  bool closed = false;           // the group is finite and every tile is listed
};

// Tiles gamma P for |gamma| <= max_length, with a sampled pairwise overlap
// check; any overlap throws OverlapDetected.
TilingSnapshot orbit_tiles(const MirrorPolytope& p, int max_length, const Tolerances& tol = {},
                           std::uint64_t seed = 1, int samples_per_tile = 6);

// Random points strictly inside P.
std::vector<Vec> interior_samples(const MirrorPolytope& p, int count, std::uint64_t seed);

// Some listed gamma has gamma^-1 x in P (up to tol).
bool orbit_covers(const MirrorPolytope& p, const Enumeration& e, const Vec& x, double tol = 1e-9);

struct LimitSetSample {
  std::vector<Vec> points;               // on the chart hyperplane c = -1, or unit vectors
  std::vector<std::vector<int>> words;   // the bi-proximal elements used
  std::size_t attempts = 0;
};

// Attracting fixed points of random bi-proximal elements with word lengths
// in [min_length, max_length]. Requires P loxodromic; throws NoProximalFound
// when none of the sampled elements is bi-proximal.
LimitSetSample limit_set_approx(const MirrorPolytope& p, int count, int min_length, int max_length,
                                std::uint64_t seed = 1, const Tolerances& tol = {}, double gap = 1e-6);

Mat word_matrix(const MirrorPolytope& p, const std::vector<int>& word);

// Half-spaces { ell < 0 } cut out by the repelling hyperplanes of the sampled
// elements and their inverses; their intersection approximates Omega_max.
std::vector<Vec> omega_max_approx(const MirrorPolytope& p, const LimitSetSample& sample);
// |x^T B x| relative to |B| |x|^2; zero exactly on the quadric {B = 0}.
double quadric_residual(const Mat& form, const Vec& x);

bool inside_halfspaces(const std::vector<Vec>& covectors, const Vec& x, double tol = 0.0);

}  // namespace cvk
