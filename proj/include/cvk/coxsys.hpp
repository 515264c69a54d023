#pragma once

#include <limits>
#include <string>
#include <vector>

#include "cvk/linalg.hpp"

namespace cvk {

// Coxeter label m_st. Infinity is a sentinel, never a float.
using Label = int;
inline constexpr Label kInfinity = std::numeric_limits<int>::max();

inline bool is_infinite(Label m) { return m == kInfinity; }

// Sorted generator indices.
using Subset = std::vector<int>;

class CoxeterSystem {
 public:
  CoxeterSystem() = default;
  // Validates symmetry, unit diagonal and off-diagonal labels >= 2.
  CoxeterSystem(std::vector<std::string> names, const std::vector<std::vector<Label>>& labels);
  // Generators named "1", "2", ...
  explicit CoxeterSystem(const std::vector<std::vector<Label>>& labels);

  int rank() const { return rank_; }
  Label label(int s, int t) const { return labels_[static_cast<std::size_t>(s * rank_ + t)]; }
  const std::string& name(int s) const { return names_[static_cast<std::size_t>(s)]; }
  const std::vector<std::string>& names() const { return names_; }
  std::vector<std::vector<Label>> label_matrix() const;

  CoxeterSystem restrict_to(const Subset& subset) const;
  Subset all() const;

  bool same_labels(const CoxeterSystem& other) const { return rank_ == other.rank_ && labels_ == other.labels_; }
  bool operator==(const CoxeterSystem&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<Label> labels_;
  int rank_ = 0;
};

// -2 cos(pi / m_st), with -2 for infinite labels and 2 on the diagonal.
Mat gram_matrix(const CoxeterSystem& sys);

// Connected components of the graph joining s and t whenever m_st != 2.
std::vector<Subset> irreducible_components(const CoxeterSystem& sys, const Subset& within);
std::vector<Subset> irreducible_components(const CoxeterSystem& sys);
bool is_irreducible(const CoxeterSystem& sys, const Subset& within);

enum class DiagramKind { Spherical, Affine, Large };
const char* to_string(DiagramKind k);

struct DiagramClass {
  DiagramKind kind = DiagramKind::Large;
  std::string name;  // catalog name for spherical and affine diagrams
  double min_eigenvalue = 0.0;
};

// The system must be irreducible (Error PreconditionUnmet otherwise).
DiagramClass classify_irreducible(const CoxeterSystem& sys, double eps = 1e-9);

// W_T is finite. The empty subset is spherical.
bool is_spherical(const CoxeterSystem& sys, const Subset& t, double eps = 1e-9);
// Every irreducible component of T is affine; T nonempty.
bool is_affine(const CoxeterSystem& sys, const Subset& t, double eps = 1e-9);

// Generators outside T commuting with every generator of T.
Subset orthogonal_complement(const CoxeterSystem& sys, const Subset& t);

// Rank cap for the exhaustive subset searches below.
inline constexpr int kSubsetSearchMaxRank = 12;

// Subsets T with W_T infinite and every proper W_T' finite. These are exactly
// the irreducible affine and Lanner subsystems.
std::vector<Subset> just_infinite_subsystems(const CoxeterSystem& sys, double eps = 1e-9);

struct RelHypCheck {
  bool holds = true;
  int failed_condition = 0;  // 1, 2 or 3 when !holds
  std::string reason;
  std::vector<Subset> witness;
};

// Caprace's criterion for W relative to a family of peripheral subsystems.
RelHypCheck relative_hyperbolicity_check(const CoxeterSystem& sys, const std::vector<Subset>& peripherals,
                                         double eps = 1e-9);

// Label-preserving graph isomorphism.
bool isomorphic(const CoxeterSystem& a, const CoxeterSystem& b);

std::string to_string(const Subset& s);

}  // namespace cvk
