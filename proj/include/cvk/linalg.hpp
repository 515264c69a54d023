#pragma once

#include <Eigen/Dense>

namespace cvk {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Number of singular values above rel_eps * sigma_max.
int numerical_rank(const Mat& m, double rel_eps);

// Orthonormal basis (as columns) of the right kernel: singular vectors whose
// singular value is at most rel_eps * sigma_max. An all-zero matrix has the
// whole space as kernel.
Mat null_space(const Mat& m, double rel_eps);

// Ascending eigenvalues of a symmetric matrix.
Vec symmetric_eigenvalues(const Mat& m);

// Largest absolute entry, or 0 for an empty matrix.
double max_abs(const Mat& m);

// Submatrix on the given rows and columns.
template <class Idx>
Mat principal(const Mat& m, const Idx& idx) {
  Mat out(idx.size(), idx.size());
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index j = 0; j < out.cols(); ++j)
      out(i, j) = m(idx[i], idx[j]);
  return out;
}

}  // namespace cvk
