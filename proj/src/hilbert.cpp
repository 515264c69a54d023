#include "cvk/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cvk/errors.hpp"

namespace cvk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double cross2(const Vec& o, const Vec& a, const Vec& b) {
  return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
}

void require_inside(const ConvexDomain& d, const Vec& x) {
  if (!d.contains(x)) throw Error(ErrorCode::PointOutside, "point is not inside the domain");
}

}  // namespace

HalfSpaceDomain::HalfSpaceDomain(Mat normals, Vec offsets) : normals_(std::move(normals)), offsets_(std::move(offsets)) {
  if (normals_.rows() != offsets_.size()) throw Error(ErrorCode::RankMismatch, "one offset per half-space");
}

bool HalfSpaceDomain::contains(const Vec& x) const { return ((normals_ * x - offsets_).array() < 0).all(); }

Chord HalfSpaceDomain::chord(const Vec& x, const Vec& v) const {
  require_inside(*this, x);
  Chord c{-kInf, kInf};
  const Vec slack = offsets_ - normals_ * x;  // > 0
  const Vec rate = normals_ * v;
  for (Eigen::Index i = 0; i < rate.size(); ++i) {
    if (rate(i) > 0) c.t_plus = std::min(c.t_plus, slack(i) / rate(i));
    else if (rate(i) < 0) c.t_minus = std::max(c.t_minus, slack(i) / rate(i));
  }
  if (!std::isfinite(c.t_plus) || !std::isfinite(c.t_minus))
    throw Error(ErrorCode::DegenerateChord, "the line leaves the domain only at infinity");
  return c;
}

QuadricDomain::QuadricDomain(Mat q, Vec b, double c) : q_(std::move(q)), b_(std::move(b)), c_(c) {}

double QuadricDomain::value(const Vec& x) const { return x.dot(q_ * x) + 2.0 * b_.dot(x) + c_; }

bool QuadricDomain::contains(const Vec& x) const { return value(x) < 0; }

Chord QuadricDomain::chord(const Vec& x, const Vec& v) const {
  require_inside(*this, x);
  // a t^2 + 2 h t + g = 0 with g < 0
  const double a = v.dot(q_ * v);
  const double h = v.dot(q_ * x + b_);
  const double g = value(x);
  if (!(a > 0)) throw Error(ErrorCode::DegenerateChord, "the quadric is unbounded along this line");
  const double root = std::sqrt(h * h - a * g);
  // stable pair of roots
  const double q = -(h + std::copysign(root, h));
  double t1 = q / a, t2 = g / q;
  if (h == 0.0) {
    t1 = root / a;
    t2 = -root / a;
  }
  return {std::min(t1, t2), std::max(t1, t2)};
}

HullDomain2D::HullDomain2D(const std::vector<Vec>& points) {
  std::vector<Vec> pts = points;
  for (const Vec& p : pts)
    if (p.size() != 2) throw Error(ErrorCode::RankMismatch, "hull points must be planar");
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1));
  });
  if (pts.size() < 3) throw Error(ErrorCode::DegenerateChord, "hull needs at least three points");
  std::vector<Vec> h(2 * pts.size());
  std::size_t k = 0;
  for (const Vec& p : pts) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  hull_ = std::move(h);
  for (const Vec& a : hull_)
    for (const Vec& b : hull_) diameter_ = std::max(diameter_, (a - b).norm());
}

bool HullDomain2D::contains(const Vec& x) const {
  const std::size_t n = hull_.size();
  for (std::size_t i = 0; i < n; ++i)
    if (cross2(hull_[i], hull_[(i + 1) % n], x) <= 0) return false;
  return true;
}

double HullDomain2D::bisect(const Vec& x, const Vec& v) const {
  const double speed = v.norm();
  if (speed == 0.0) throw Error(ErrorCode::DegenerateChord, "zero direction");
  double inside = 0.0, outside = 2.0 * diameter_ / speed + 1.0;
  for (int i = 0; i < 200 && outside - inside > 1e-16 * outside; ++i) {
    const double mid = 0.5 * (inside + outside);
    (contains(x + mid * v) ? inside : outside) = mid;
  }
  return 0.5 * (inside + outside);
}

Chord HullDomain2D::chord(const Vec& x, const Vec& v) const {
  require_inside(*this, x);
  return {-bisect(x, -v), bisect(x, v)};
}

double hilbert_distance(const ConvexDomain& domain, const Vec& x, const Vec& y) {
  require_inside(domain, x);
  require_inside(domain, y);
  if ((x - y).norm() == 0.0) return 0.0;
  const Chord c = domain.chord(x, y - x);  // x at t = 0, y at t = 1
  const double a = c.t_minus, b = c.t_plus;
  if (!(b > 1.0) || !(a < 0.0)) throw Error(ErrorCode::PointOutside, "point lies on the boundary");
  return 0.5 * std::log(((1.0 - a) * b) / ((-a) * (b - 1.0)));
}

double finsler_norm(const ConvexDomain& domain, const Vec& x, const Vec& v) {
  if (v.norm() == 0.0) return 0.0;
  const Chord c = domain.chord(x, v);
  return 0.5 * (1.0 / c.t_plus + 1.0 / (-c.t_minus));
}

AffineChart::AffineChart(const Vec& covector) : c_(covector) {
  if (c_.norm() == 0.0) throw Error(ErrorCode::RankMismatch, "zero chart covector");
  origin_ = -c_ / c_.squaredNorm();
  basis_ = null_space(c_.transpose(), 1e-12);
}

Vec AffineChart::normalize(const Vec& x) const {
  const double cx = c_.dot(x);
  if (!(cx < 0)) throw Error(ErrorCode::PointOutside, "point is not in the affine chart");
  return x / (-cx);
}

Vec AffineChart::to_chart(const Vec& x) const { return basis_.transpose() * (normalize(x) - origin_); }

Vec AffineChart::from_chart(const Vec& y) const { return origin_ + basis_ * y; }

QuadricDomain ellipsoid_in_chart(const Mat& form, const AffineChart& chart) {
  const Vec o = chart.from_chart(Vec::Zero(chart.dim()));
  Mat basis(o.size(), chart.dim());
  for (int i = 0; i < chart.dim(); ++i) basis.col(i) = chart.from_chart(Vec::Unit(chart.dim(), i)) - o;
  return QuadricDomain(basis.transpose() * form * basis, basis.transpose() * form * o, o.dot(form * o));
}

}  // namespace cvk
