#include "cvk/catalog.hpp"

#include <utility>

namespace cvk {

namespace {

struct Builder {
  explicit Builder(int n) : m(static_cast<std::size_t>(n), std::vector<Label>(static_cast<std::size_t>(n), 2)) {
    for (int i = 0; i < n; ++i) m[i][i] = 1;
  }
  Builder& edge(int s, int t, Label l = 3) {
    m[s][t] = m[t][s] = l;
    return *this;
  }
  Builder& path(int from, int to) {
    for (int i = from; i < to; ++i) edge(i, i + 1);
    return *this;
  }
  CoxeterSystem build() const { return CoxeterSystem(m); }
  std::vector<std::vector<Label>> m;
};

std::string indexed(const char* family, int n) { return std::string(family) + "_" + std::to_string(n); }
std::string tilde(const char* family, int n) { return "~" + indexed(family, n); }

}  // namespace

CoxeterSystem chain_diagram(const std::vector<Label>& labels) {
  Builder b(static_cast<int>(labels.size()) + 1);
  for (std::size_t i = 0; i < labels.size(); ++i) b.edge(static_cast<int>(i), static_cast<int>(i) + 1, labels[i]);
  return b.build();
}

CoxeterSystem triangle_diagram(Label p, Label q, Label r) {
  return Builder(3).edge(0, 1, p).edge(1, 2, q).edge(0, 2, r).build();
}

std::vector<CatalogEntry> spherical_catalog(int max_rank, int max_dihedral) {
  std::vector<CatalogEntry> out;
  for (int n = 1; n <= max_rank; ++n) {
    out.push_back({indexed("A", n), Builder(n).path(0, n - 1).build()});
    if (n >= 2) out.push_back({indexed("B", n), Builder(n).path(0, n - 1).edge(0, 1, 4).build()});
    if (n >= 4) out.push_back({indexed("D", n), Builder(n).path(0, n - 2).edge(n - 1, n - 3).build()});
    if (n >= 6 && n <= 8) out.push_back({indexed("E", n), Builder(n).path(0, n - 2).edge(n - 1, 2).build()});
    if (n == 4) out.push_back({"F_4", chain_diagram({3, 4, 3})});
    if (n == 3) out.push_back({"H_3", chain_diagram({5, 3})});
    if (n == 4) out.push_back({"H_4", chain_diagram({5, 3, 3})});
    if (n == 2)
      for (int p = 5; p <= max_dihedral; ++p)
        out.push_back({"I_2(" + std::to_string(p) + ")", chain_diagram({p})});
  }
  return out;
}

std::vector<CatalogEntry> affine_catalog(int max_rank) {
  std::vector<CatalogEntry> out;
  for (int r = 2; r <= max_rank; ++r) {
    const int n = r - 1;
    if (n == 1) out.push_back({tilde("A", 1), chain_diagram({kInfinity})});
    if (n >= 2) out.push_back({tilde("A", n), Builder(r).path(0, n).edge(0, n).build()});
    if (n == 2) out.push_back({tilde("B", 2), chain_diagram({4, 4})});
    if (n == 2) out.push_back({tilde("G", 2), chain_diagram({6, 3})});
    if (n >= 3) out.push_back({tilde("B", n), Builder(r).path(0, n - 1).edge(0, 1, 4).edge(n, n - 2).build()});
    if (n >= 3) out.push_back({tilde("C", n), Builder(r).path(0, n).edge(0, 1, 4).edge(n - 1, n, 4).build()});
    if (n >= 4) out.push_back({tilde("D", n), Builder(r).path(0, n - 2).edge(n - 1, 1).edge(n, n - 3).build()});
    if (n == 4) out.push_back({tilde("F", 4), chain_diagram({3, 4, 3, 3})});
    if (n == 6) out.push_back({tilde("E", 6), Builder(r).path(0, 4).edge(5, 2).edge(6, 5).build()});
    if (n == 7) out.push_back({tilde("E", 7), Builder(r).path(0, 6).edge(7, 3).build()});
    if (n == 8) out.push_back({tilde("E", 8), Builder(r).path(0, 7).edge(8, 2).build()});
  }
  return out;
}

std::string catalog_name(const CoxeterSystem& sys) {
  const int n = sys.rank();
  if (n == 2) {
    const Label m = sys.label(0, 1);
    if (is_infinite(m)) return tilde("A", 1);
    if (m == 2) return "";
    if (m == 3) return indexed("A", 2);
    if (m == 4) return indexed("B", 2);
    return "I_2(" + std::to_string(m) + ")";
  }
  for (const auto& e : spherical_catalog(n, 2))
    if (e.system.rank() == n && isomorphic(e.system, sys)) return e.name;
  for (const auto& e : affine_catalog(n))
    if (e.system.rank() == n && isomorphic(e.system, sys)) return e.name;
  return "";
}

}  // namespace cvk
