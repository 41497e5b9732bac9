#pragma once

#include <Eigen/Core>

namespace hankelmc {

/// Largest matrix dimension accepted by the dense eigensolver-backed
/// operations in this library.
inline constexpr int kMaxDim = 256;

/// A square n x n Hankel matrix stored by its 2n-1 anti-diagonal values.
///
/// Anti-diagonal k (0-based, k = i + j for 0-based row/column indices)
/// carries a single value antidiag[k]. The first n anti-diagonals
/// (k = 0..n-1) form the pinned observation region, the trailing n-1 are
/// free completion variables.
class HankelSpec {
 public:
  /// Throws std::invalid_argument unless 2 <= n <= kMaxDim,
  /// antidiag.size() == 2n-1 and all values are finite.
  HankelSpec(int n, Eigen::VectorXd antidiag);

  int n() const noexcept { return n_; }
  /// Number of pinned anti-diagonals; always n (indices 0..n-1).
  int known_count() const noexcept { return n_; }
  const Eigen::VectorXd& antidiag() const noexcept { return antidiag_; }
  double antidiag(int k) const { return antidiag_(k); }

 private:
  int n_;
  Eigen::VectorXd antidiag_;
};

/// Deviations v_1..v_{n-1} of the free anti-diagonals. The induced matrix
/// H = sum_i v_i G_i is symmetric Hankel and zero on the whole pinned
/// region (anti-diagonals 0..n-1).
class DeviationVector {
 public:
  /// v holds v_1..v_{n-1}; throws std::invalid_argument on size or
  /// non-finite values.
  DeviationVector(int n, Eigen::VectorXd v);

  int n() const noexcept { return n_; }
  const Eigen::VectorXd& values() const noexcept { return v_; }
  bool is_zero() const noexcept { return v_.isZero(0.0); }

 private:
  int n_;
  Eigen::VectorXd v_;
};

/// Number of matrix entries lying on anti-diagonal k of an n x n matrix.
int antidiag_count(int n, int k);

/// Basis matrix G_i for 1 <= i <= n-1: ones on anti-diagonal n-1+i
/// (the i-th free anti-diagonal), zeros elsewhere. G_i is symmetric and
/// has n-i nonzero entries.
Eigen::MatrixXd basis_matrix(int n, int i);

/// Dense symmetric matrix M with M(i,j) = antidiag[i+j].
Eigen::MatrixXd materialize(const HankelSpec& spec);

/// H = sum_i v_i G_i.
Eigen::MatrixXd materialize(const DeviationVector& dev);

/// Per-anti-diagonal means of a square matrix: entry k is the mean of all
/// M(i,j) with i+j = k. Anti-diagonals whose entries are bitwise identical
/// are passed through unchanged, so the projection is exact on Hankel
/// input.
Eigen::VectorXd antidiag_means(const Eigen::Ref<const Eigen::MatrixXd>& M);

/// Frobenius-orthogonal projection of M onto the Hankel subspace.
HankelSpec antidiag_average(const Eigen::Ref<const Eigen::MatrixXd>& M);

}  // namespace hankelmc
