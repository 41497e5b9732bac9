#pragma once

#include <stdexcept>

#include <Eigen/Core>

namespace hankelmc {

/// Thrown when the dense symmetric eigensolver does not converge.
class EigenSolverError : public std::runtime_error {
 public:
  EigenSolverError(int rows, int cols);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

 private:
  int rows_, cols_;
};

/// Nuclear norm of a symmetric matrix: sum of singular values, computed as
/// the sum of |eigenvalues|. Zero iff M is zero.
double nuclear_norm(const Eigen::Ref<const Eigen::MatrixXd>& M);

/// Spectral norm of a symmetric matrix: the largest |eigenvalue|.
double spectral_norm(const Eigen::Ref<const Eigen::MatrixXd>& M);

/// Singular value thresholding, the proximal operator of tau * nuclear
/// norm at a symmetric M: each eigenvalue lambda is replaced by
/// sign(lambda) * max(|lambda| - tau, 0) with eigenvectors kept.
/// Requires tau > 0.
Eigen::MatrixXd svt(const Eigen::Ref<const Eigen::MatrixXd>& M, double tau);

}  // namespace hankelmc
