#include "cvk/cartan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cvk/errors.hpp"

namespace cvk {

void validate_cartan(const Mat& a, double eps) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::NotCartan, "matrix is not square");
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (std::abs(a(i, i) - 2.0) > eps)
      throw Error(ErrorCode::NotCartan, "diagonal entry " + std::to_string(i + 1) + " is not 2");
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (i == j) continue;
      if (a(i, j) > eps)
        throw Error(ErrorCode::NotCartan,
                    "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is positive");
      if ((std::abs(a(i, j)) <= eps) != (std::abs(a(j, i)) <= eps))
        throw Error(ErrorCode::NotCartan,
                    "zero pattern is not symmetric at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
  }
}

std::vector<Subset> cartan_components(const Mat& a, double eps) {
  const auto n = static_cast<int>(a.rows());
  std::vector<Subset> out;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int root = 0; root < n; ++root) {
    if (seen[root]) continue;
    Subset comp;
    std::vector<int> stack{root};
    seen[root] = 1;
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      comp.push_back(i);
      for (int j = 0; j < n; ++j)
        if (!seen[j] && j != i && (std::abs(a(i, j)) > eps || std::abs(a(j, i)) > eps)) {
          seen[j] = 1;
          stack.push_back(j);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

MinEigen min_eigenvalue(const Mat& a) {
  Eigen::EigenSolver<Mat> es(a, true);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::EigenFailure, "eigensolver did not converge");
  const auto& ev = es.eigenvalues();
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < ev.size(); ++i)
    if (ev(i).real() < ev(best).real()) best = i;
  MinEigen out;
  out.value = ev(best).real();
  Vec x = es.eigenvectors().col(best).real();
  if (x.norm() == 0.0) x = es.eigenvectors().col(best).imag();
  x.normalize();
  out.residual = (a * x - out.value * x).norm();
  out.gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (i != best) out.gap = std::min(out.gap, std::abs(ev(i) - ev(best)));
  return out;
}

const char* to_string(Sign s) {
  switch (s) {
    case Sign::Positive: return "positive";
    case Sign::Zero: return "zero";
    case Sign::Negative: return "negative";
  }
  return "?";
}

CartanType cartan_type(const Mat& a, double eps) {
  validate_cartan(a, eps);
  CartanType out;
  for (Subset& c : cartan_components(a, eps)) {
    ComponentType ct;
    ct.lambda = min_eigenvalue(principal(a, c));
    ct.indices = std::move(c);
    if (ct.lambda.value > eps) ct.sign = Sign::Positive;
    else if (ct.lambda.value < -eps) ct.sign = Sign::Negative;
    else ct.sign = Sign::Zero;
    out.components.push_back(std::move(ct));
  }
  if (!out.components.empty()) {
    out.aggregate = out.components.front().sign;
    for (const auto& c : out.components)
      if (c.sign != *out.aggregate) out.aggregate.reset();
  }
  return out;
}

Vec perron_vector(const Mat& a) {
  Eigen::EigenSolver<Mat> es(a, true);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::EigenFailure, "eigensolver did not converge");
  const auto& ev = es.eigenvalues();
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < ev.size(); ++i)
    if (ev(i).real() < ev(best).real()) best = i;
  Vec x = es.eigenvectors().col(best).real();
  if (x.sum() < 0) x = -x;
  return x / x.sum();
}

}  // namespace cvk
