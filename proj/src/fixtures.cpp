#include "cvk/fixtures.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cvk/catalog.hpp"
#include "cvk/errors.hpp"

namespace cvk {

namespace {

// Outward unit normals e_k (B(e_k, e_k) = 1 for B = diag(1, 1, -1)) of the
// regular right-angled pentagon; adjacent normals are B-orthogonal.
std::vector<Vec> pentagon_normals() {
  const double c72 = std::cos(2 * std::numbers::pi / 5);
  const double ch = std::sqrt(1.0 / (1.0 - c72));
  const double sh = std::sqrt(ch * ch - 1.0);
  std::vector<Vec> out;
  for (int k = 0; k < 5; ++k) {
    const double th = 2 * std::numbers::pi * k / 5;
    out.push_back(Vec::Zero(3));
    out.back() << ch * std::cos(th), ch * std::sin(th), sh;
  }
  return out;
}

Facet lorentz_facet(const Vec& e, const std::string& name) {
  const Mat b = Vec(Eigen::Vector3d(1, 1, -1)).asDiagonal();
  return {name, b * e, 2.0 * e};
}

// "A~2", "~A_2" and "a~_2" all become "~a2".
std::string canonical_diagram(const std::string& s) {
  std::string out;
  bool tilde = false;
  for (char c : s) {
    if (c == '~') tilde = true;
    else if (std::isalnum(static_cast<unsigned char>(c))) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return tilde ? "~" + out : out;
}

Label parse_label(const std::string& s) {
  if (s == "inf") return kInfinity;
  return std::stoi(s);
}

}  // namespace

MirrorPolytope right_angled_pentagon() {
  const auto e = pentagon_normals();
  std::vector<Facet> facets;
  for (int k = 0; k < 5; ++k) facets.push_back(lorentz_facet(e[k], std::to_string(k + 1)));
  return MirrorPolytope::build(2, std::move(facets));
}

MirrorPolytope loxodromic_quadrilateral() {
  const auto e = pentagon_normals();
  std::vector<Facet> facets;
  for (int k = 1; k < 5; ++k) facets.push_back(lorentz_facet(e[k], std::to_string(k)));
  return MirrorPolytope::build(2, std::move(facets));
}

MirrorPolytope parabolic_prism() {
  // Gauge: a_st = a_ts = -1 along the tree 12, 13, 15, 45; the cycle 1-3-5
  // has product 1 (parabolic vertex), the cycle 1-2-3 has product 3, and
  // a_45 = a_54 = -sqrt(24) makes det A = 0 so that A has rank 4.
  Mat a = 2.0 * Mat::Identity(5, 5);
  const auto set = [&](int s, int t, double st, double ts) {
    a(s, t) = st;
    a(t, s) = ts;
  };
  set(0, 1, -1, -1);
  set(0, 2, -1, -1);
  set(0, 4, -1, -1);
  set(2, 4, -1, -1);
  set(1, 2, -3, -1.0 / 3.0);
  set(3, 4, -std::sqrt(24.0), -std::sqrt(24.0));
  return polytope_from_cartan(a, {"1", "2", "3", "4", "5"});
}

MirrorPolytope deformed_triangle(double t) {
  Mat a(3, 3);
  const double r2 = std::sqrt(2.0);
  a << 2, -t, -r2,
       -1.0 / t, 2, -1,
       -r2, -1, 2;
  return polytope_from_cartan(a, {"1", "2", "3"});
}

MirrorPolytope named_fixture(const std::string& name) {
  if (name == "pentagon") return right_angled_pentagon();
  if (name == "quadrilateral") return loxodromic_quadrilateral();
  if (name == "prism") return parabolic_prism();
  if (name == "deformed-334") return deformed_triangle(2.0);
  if (name == "cone-237") return cone_over(tits_simplex(triangle_diagram(2, 3, 7)));
  if (name.rfind("triangle-", 0) == 0 && name.size() == 12) {
    const std::string d = name.substr(9);
    if (std::all_of(d.begin(), d.end(), [](char c) { return c >= '2' && c <= '9'; }))
      return tits_simplex(triangle_diagram(d[0] - '0', d[1] - '0', d[2] - '0'));
  }
  if (name.rfind("tits-", 0) == 0) {
    const std::string want = canonical_diagram(name.substr(5));
    for (const auto& catalog : {spherical_catalog(8), affine_catalog(9)})
      for (const CatalogEntry& e : catalog)
        if (canonical_diagram(e.name) == want) return tits_simplex(e.system);
    std::vector<std::string> parts;
    std::stringstream ss(name.substr(5));
    for (std::string item; std::getline(ss, item, '-');) parts.push_back(item);
    if (parts.size() == 3) {
      try {
        return tits_simplex(triangle_diagram(parse_label(parts[0]), parse_label(parts[1]), parse_label(parts[2])));
      } catch (const std::invalid_argument&) {
      }
    }
  }
  throw Error(ErrorCode::Parse, "unknown fixture '" + name + "'");
}

std::vector<std::string> fixture_names() {
  return {"tits-2-3-7", "tits-2-4-5", "tits-3-3-3", "tits-2-3-inf", "tits-A_3", "pentagon",
          "quadrilateral", "prism", "deformed-334", "cone-237"};
}

}  // namespace cvk
