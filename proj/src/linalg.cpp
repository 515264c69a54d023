#include "cvk/linalg.hpp"

#include "cvk/config.hpp"
#include "cvk/errors.hpp"

namespace cvk {

void validate(const RunConfig& cfg) {
  const auto& t = cfg.tol;
  if (!(t.eps > 0 && t.eps < t.delta && t.delta < 1))
    throw Error(ErrorCode::InvalidConfig, "tolerances must satisfy 0 < eps < delta < 1");
  if (!(t.grid > 0) || !(t.audit > 0) || t.audit > t.grid)
    throw Error(ErrorCode::InvalidConfig, "dedup grid and audit band must satisfy 0 < audit <= grid");
  if (cfg.max_word_length < 0 || cfg.max_word_length > kMaxWordLength)
    throw Error(ErrorCode::InvalidConfig,
                "max word length must lie in [0, " + std::to_string(kMaxWordLength) + "]");
}

int numerical_rank(const Mat& m, double rel_eps) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const Vec& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_eps * s(0)) ++r;
  return r;
}

Mat null_space(const Mat& m, double rel_eps) {
  const auto n = m.cols();
  if (m.rows() == 0 || max_abs(m) == 0.0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_eps * s(0)) ++r;
  return svd.matrixV().rightCols(n - r);
}

Vec symmetric_eigenvalues(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::EigenFailure, "symmetric eigensolver did not converge");
  return es.eigenvalues();
}

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace cvk
