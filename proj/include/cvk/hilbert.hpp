#pragma once

#include <vector>

#include "cvk/linalg.hpp"

namespace cvk {

// Parameters of the two boundary points on the line x + t v.
struct Chord {
  double t_minus = 0.0;  // < 0
  double t_plus = 0.0;   // > 0
};

class ConvexDomain {
 public:
  virtual ~ConvexDomain() = default;
  virtual bool contains(const Vec& x) const = 0;
  // Throws PointOutside if x is not inside, DegenerateChord if the line
  // leaves no bounded chord.
  virtual Chord chord(const Vec& x, const Vec& v) const = 0;
};

// { x : a_i . x < b_i }.
class HalfSpaceDomain final : public ConvexDomain {
 public:
  HalfSpaceDomain(Mat normals, Vec offsets);
  bool contains(const Vec& x) const override;
  Chord chord(const Vec& x, const Vec& v) const override;

 private:
  Mat normals_;
  Vec offsets_;
};

// { x : x^T Q x + 2 b . x + c < 0 } with Q positive definite.
class QuadricDomain final : public ConvexDomain {
 public:
  QuadricDomain(Mat q, Vec b, double c);
  bool contains(const Vec& x) const override;
  Chord chord(const Vec& x, const Vec& v) const override;
  double value(const Vec& x) const;

 private:
  Mat q_;
  Vec b_;
  double c_;
};

// Interior of the convex hull of planar points; chords by bisection.
class HullDomain2D final : public ConvexDomain {
 public:
  explicit HullDomain2D(const std::vector<Vec>& points);
  bool contains(const Vec& x) const override;
  Chord chord(const Vec& x, const Vec& v) const override;
  const std::vector<Vec>& hull() const { return hull_; }

 private:
  double bisect(const Vec& x, const Vec& v) const;
  std::vector<Vec> hull_;  // counter-clockwise
  double diameter_ = 0.0;
};

double hilbert_distance(const ConvexDomain& domain, const Vec& x, const Vec& y);
// Infinitesimal Hilbert length of v at x.
double finsler_norm(const ConvexDomain& domain, const Vec& x, const Vec& v);

// The affine chart { c < 0 } of S^d, identified with the hyperplane c = -1
// and given orthonormal coordinates.
class AffineChart {
 public:
  explicit AffineChart(const Vec& covector);
  // Throws PointOutside when c(x) >= 0.
  Vec to_chart(const Vec& x) const;
  Vec from_chart(const Vec& y) const;
  Vec normalize(const Vec& x) const;  // rescale onto c = -1
  const Vec& covector() const { return c_; }
  int dim() const { return static_cast<int>(basis_.cols()); }

 private:
  Vec c_;
  Vec origin_;
  Mat basis_;
};

// The projective ball { x^T B x < 0 } seen in the chart; B of signature (d,1).
QuadricDomain ellipsoid_in_chart(const Mat& form, const AffineChart& chart);

}  // namespace cvk
