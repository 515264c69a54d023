#include "cvk/coxsys.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <sstream>

#include "cvk/catalog.hpp"
#include "cvk/errors.hpp"

namespace cvk {

namespace {

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i + 1));
  return out;
}

using Mask = std::uint32_t;

Mask to_mask(const Subset& s) {
  Mask m = 0;
  for (int i : s) m |= Mask{1} << i;
  return m;
}

Subset from_mask(Mask m) {
  Subset s;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1u) s.push_back(i);
  return s;
}

bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }

// Per-subset data for systems small enough for exhaustive search.
class SubsetTable {
 public:
  SubsetTable(const CoxeterSystem& sys, double eps) : n_(sys.rank()) {
    if (n_ > kSubsetSearchMaxRank)
      throw Error(ErrorCode::CapExceeded, "subset search is capped at rank " + std::to_string(kSubsetSearchMaxRank));
    const Mat g = gram_matrix(sys);
    const std::size_t total = std::size_t{1} << n_;
    commute_.assign(static_cast<std::size_t>(n_), 0);
    for (int s = 0; s < n_; ++s)
      for (int t = 0; t < n_; ++t)
        if (s != t && sys.label(s, t) == 2) commute_[s] |= Mask{1} << t;
    spherical_.assign(total, 0);
    affine_.assign(total, 0);
    connected_.assign(total, 0);
    spherical_[0] = 1;
    for (Mask m = 1; m < total; ++m) {
      connected_[m] = is_connected(m);
      if (connected_[m]) {
        const Subset idx = from_mask(m);
        const Vec ev = symmetric_eigenvalues(principal(g, idx));
        spherical_[m] = ev(0) > eps;
        affine_[m] = !spherical_[m] && ev(0) >= -eps && (ev.size() < 2 || ev(1) > eps);
      }
    }
    for (Mask m = 1; m < total; ++m) {
      if (connected_[m]) continue;
      bool sph = true, aff = true;
      for (Mask c : components(m)) {
        sph = sph && spherical_[c];
        aff = aff && affine_[c];
      }
      spherical_[m] = sph;
      affine_[m] = aff;
    }
  }

  std::size_t size() const { return std::size_t{1} << n_; }
  bool spherical(Mask m) const { return spherical_[m]; }
  bool affine(Mask m) const { return m != 0 && affine_[m]; }
  bool irreducible_infinite(Mask m) const { return m != 0 && connected_[m] && !spherical_[m]; }
  Mask perp(Mask m) const {
    Mask out = (size() - 1) & ~m;
    for (int s = 0; s < n_; ++s)
      if (m & (Mask{1} << s)) out &= commute_[s];
    return out;
  }

 private:
  bool is_connected(Mask m) const { return components(m).size() == 1; }

  std::vector<Mask> components(Mask m) const {
    std::vector<Mask> out;
    Mask left = m;
    while (left) {
      Mask comp = left & (~left + 1);
      Mask grown = comp;
      do {
        comp = grown;
        for (int s = 0; s < n_; ++s)
          if (comp & (Mask{1} << s)) grown |= m & ~commute_[s] & ~(Mask{1} << s);
      } while (grown != comp);
      out.push_back(comp);
      left &= ~comp;
    }
    return out;
  }

  int n_;
  std::vector<Mask> commute_;
  std::vector<char> spherical_, affine_, connected_;
};

// Masks ordered by size, then by value; witnesses come out smallest first.
std::vector<Mask> masks_by_size(std::size_t total) {
  std::vector<Mask> out(total);
  for (std::size_t i = 0; i < total; ++i) out[i] = static_cast<Mask>(i);
  std::stable_sort(out.begin(), out.end(),
                   [](Mask a, Mask b) { return std::popcount(a) < std::popcount(b); });
  return out;
}

}  // namespace

CoxeterSystem::CoxeterSystem(const std::vector<std::vector<Label>>& labels)
    : CoxeterSystem(default_names(labels.size()), labels) {}

CoxeterSystem::CoxeterSystem(std::vector<std::string> names, const std::vector<std::vector<Label>>& labels)
    : names_(std::move(names)), rank_(static_cast<int>(labels.size())) {
  if (names_.size() != labels.size())
    throw Error(ErrorCode::RankMismatch, "generator names and label matrix disagree in size");
  for (const auto& row : labels)
    if (row.size() != labels.size()) throw Error(ErrorCode::RankMismatch, "label matrix is not square");
  for (int s = 0; s < rank_; ++s) {
    if (labels[s][s] != 1)
      throw Error(ErrorCode::InvalidDiagonal, "diagonal label at " + names_[s] + " must be 1");
    for (int t = 0; t < rank_; ++t) {
      if (s == t) continue;
      if (labels[s][t] != labels[t][s])
        throw Error(ErrorCode::NotSymmetric, "labels at (" + names_[s] + "," + names_[t] + ") differ");
      if (labels[s][t] < 2)
        throw Error(ErrorCode::LabelOutOfRange, "label at (" + names_[s] + "," + names_[t] + ") is below 2");
    }
  }
  labels_.reserve(static_cast<std::size_t>(rank_ * rank_));
  for (const auto& row : labels) labels_.insert(labels_.end(), row.begin(), row.end());
}

std::vector<std::vector<Label>> CoxeterSystem::label_matrix() const {
  std::vector<std::vector<Label>> out(static_cast<std::size_t>(rank_));
  for (int s = 0; s < rank_; ++s)
    for (int t = 0; t < rank_; ++t) out[s].push_back(label(s, t));
  return out;
}

CoxeterSystem CoxeterSystem::restrict_to(const Subset& subset) const {
  std::vector<std::string> n;
  std::vector<std::vector<Label>> l;
  for (int s : subset) {
    n.push_back(name(s));
    std::vector<Label> row;
    for (int t : subset) row.push_back(label(s, t));
    l.push_back(std::move(row));
  }
  return CoxeterSystem(std::move(n), l);
}

Subset CoxeterSystem::all() const {
  Subset s(static_cast<std::size_t>(rank_));
  for (int i = 0; i < rank_; ++i) s[i] = i;
  return s;
}

Mat gram_matrix(const CoxeterSystem& sys) {
  const int n = sys.rank();
  Mat g(n, n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const Label m = sys.label(s, t);
      if (s == t) g(s, t) = 2.0;
      else if (is_infinite(m)) g(s, t) = -2.0;
      else if (m == 2) g(s, t) = 0.0;
      else g(s, t) = -2.0 * std::cos(std::numbers::pi / m);
    }
  return g;
}

std::vector<Subset> irreducible_components(const CoxeterSystem& sys, const Subset& within) {
  std::vector<Subset> out;
  std::vector<char> seen(static_cast<std::size_t>(sys.rank()), 0);
  for (int root : within) {
    if (seen[root]) continue;
    Subset comp;
    std::vector<int> stack{root};
    seen[root] = 1;
    while (!stack.empty()) {
      const int s = stack.back();
      stack.pop_back();
      comp.push_back(s);
      for (int t : within)
        if (!seen[t] && t != s && sys.label(s, t) != 2) {
          seen[t] = 1;
          stack.push_back(t);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<Subset> irreducible_components(const CoxeterSystem& sys) {
  return irreducible_components(sys, sys.all());
}

bool is_irreducible(const CoxeterSystem& sys, const Subset& within) {
  return !within.empty() && irreducible_components(sys, within).size() == 1;
}

const char* to_string(DiagramKind k) {
  switch (k) {
    case DiagramKind::Spherical: return "spherical";
    case DiagramKind::Affine: return "affine";
    case DiagramKind::Large: return "large";
  }
  return "?";
}

DiagramClass classify_irreducible(const CoxeterSystem& sys, double eps) {
  if (!is_irreducible(sys, sys.all()))
    throw Error(ErrorCode::PreconditionUnmet, "diagram is not connected");
  const Vec ev = symmetric_eigenvalues(gram_matrix(sys));
  DiagramClass out;
  out.min_eigenvalue = ev(0);
  if (ev(0) > eps) out.kind = DiagramKind::Spherical;
  else if (ev(0) >= -eps && (ev.size() < 2 || ev(1) > eps)) out.kind = DiagramKind::Affine;
  else out.kind = DiagramKind::Large;
  if (out.kind != DiagramKind::Large) out.name = catalog_name(sys);
  return out;
}

bool is_spherical(const CoxeterSystem& sys, const Subset& t, double eps) {
  if (t.empty()) return true;
  return symmetric_eigenvalues(principal(gram_matrix(sys), t))(0) > eps;
}

bool is_affine(const CoxeterSystem& sys, const Subset& t, double eps) {
  if (t.empty()) return false;
  const Mat g = gram_matrix(sys);
  for (const Subset& c : irreducible_components(sys, t)) {
    const Vec ev = symmetric_eigenvalues(principal(g, c));
    if (!(ev(0) <= eps && ev(0) >= -eps && (ev.size() < 2 || ev(1) > eps))) return false;
  }
  return true;
}

Subset orthogonal_complement(const CoxeterSystem& sys, const Subset& t) {
  Subset out;
  for (int s = 0; s < sys.rank(); ++s) {
    if (std::find(t.begin(), t.end(), s) != t.end()) continue;
    if (std::all_of(t.begin(), t.end(), [&](int u) { return sys.label(s, u) == 2; })) out.push_back(s);
  }
  return out;
}

std::vector<Subset> just_infinite_subsystems(const CoxeterSystem& sys, double eps) {
  const SubsetTable table(sys, eps);
  std::vector<Subset> out;
  for (Mask m : masks_by_size(table.size())) {
    if (m == 0 || table.spherical(m)) continue;
    bool minimal = true;
    for (Mask bits = m; bits && minimal; bits &= bits - 1)
      minimal = table.spherical(m & ~(bits & (~bits + 1)));
    if (minimal) out.push_back(from_mask(m));
  }
  return out;
}

RelHypCheck relative_hyperbolicity_check(const CoxeterSystem& sys, const std::vector<Subset>& peripherals,
                                         double eps) {
  const SubsetTable table(sys, eps);
  std::vector<Mask> periph;
  for (const Subset& t : peripherals) {
    for (int s : t)
      if (s < 0 || s >= sys.rank()) throw Error(ErrorCode::RankMismatch, "peripheral refers to a missing generator");
    periph.push_back(to_mask(t));
  }
  const auto covered = [&](Mask m) {
    return std::any_of(periph.begin(), periph.end(), [&](Mask t) { return subset_of(m, t); });
  };
  const std::vector<Mask> order = masks_by_size(table.size());

  RelHypCheck out;
  const auto fail = [&](int cond, std::string why, std::vector<Mask> w) {
    out.holds = false;
    out.failed_condition = cond;
    out.reason = std::move(why);
    for (Mask m : w) out.witness.push_back(from_mask(m));
    return out;
  };

  for (Mask m : order)
    if (std::popcount(m) >= 3 && table.affine(m) && !covered(m))
      return fail(1, "affine subsystem of rank >= 3 lies in no peripheral", {m});
  for (Mask a : order) {
    if (!table.irreducible_infinite(a)) continue;
    const Mask perp = table.perp(a);
    for (Mask b = perp; b; b = (b - 1) & perp)
      if (table.irreducible_infinite(b) && !covered(a | b))
        return fail(1, "orthogonal pair of irreducible infinite subsystems lies in no peripheral", {a, b});
  }
  for (std::size_t i = 0; i < periph.size(); ++i)
    for (std::size_t j = i + 1; j < periph.size(); ++j)
      if (!table.spherical(periph[i] & periph[j]))
        return fail(2, "two peripherals meet in an infinite subsystem", {periph[i], periph[j]});
  for (Mask t : periph)
    for (Mask u = t; u; u = (u - 1) & t)
      if (table.irreducible_infinite(u) && !subset_of(table.perp(u), t))
        return fail(3, "orthogonal complement of an irreducible infinite subsystem leaves its peripheral",
                    {u, table.perp(u) & ~t});
  return out;
}

bool isomorphic(const CoxeterSystem& a, const CoxeterSystem& b) {
  const int n = a.rank();
  if (n != b.rank()) return false;
  const auto signature = [](const CoxeterSystem& x, int s) {
    std::vector<Label> row;
    for (int t = 0; t < x.rank(); ++t)
      if (t != s) row.push_back(x.label(s, t));
    std::sort(row.begin(), row.end());
    return row;
  };
  std::vector<std::vector<Label>> sa, sb;
  for (int s = 0; s < n; ++s) {
    sa.push_back(signature(a, s));
    sb.push_back(signature(b, s));
  }
  {
    auto x = sa, y = sb;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) return false;
  }
  std::vector<int> image(static_cast<std::size_t>(n), -1);
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::function<bool(int)> extend = [&](int s) {
    if (s == n) return true;
    for (int t = 0; t < n; ++t) {
      if (used[t] || sa[s] != sb[t]) continue;
      bool ok = true;
      for (int r = 0; r < s && ok; ++r) ok = a.label(s, r) == b.label(t, image[r]);
      if (!ok) continue;
      image[s] = t;
      used[t] = 1;
      if (extend(s + 1)) return true;
      used[t] = 0;
    }
    return false;
  };
  return extend(0);
}

std::string to_string(const Subset& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i] + 1;
  os << '}';
  return os.str();
}

}  // namespace cvk
