#pragma once

#include <cstdint>

namespace cvk {

struct Tolerances {
  double eps = 1e-9;    // eigenvalue sign and rank threshold
  double delta = 1e-6;  // dihedral angle matching
  double grid = 1e-6;   // orbit dedup neighbourhood
  double audit = 1e-9;  // orbit dedup: closer than this is the same element
};

inline constexpr int kMaxWordLength = 14;

struct RunConfig {
  Tolerances tol;
  int max_word_length = 8;
  std::uint64_t seed = 1;
};

// Throws Error(InvalidConfig) unless 0 < eps < delta < 1, grid > 0 and
// 0 <= max_word_length <= kMaxWordLength.
void validate(const RunConfig& cfg);

}  // namespace cvk
