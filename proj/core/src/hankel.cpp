#include <hankelmc/hankel.hpp>

#include <stdexcept>
#include <string>

namespace hankelmc {

namespace {

void check_dimension(int n) {
  if (n < 2)
    throw std::invalid_argument("Hankel dimension must be at least 2, got " +
                                std::to_string(n));
  if (n > kMaxDim)
    throw std::invalid_argument("Hankel dimension " + std::to_string(n) +
                                " exceeds the supported cap " +
                                std::to_string(kMaxDim));
}

}  // namespace

HankelSpec::HankelSpec(int n, Eigen::VectorXd antidiag)
    : n_(n), antidiag_(std::move(antidiag)) {
  check_dimension(n_);
  if (antidiag_.size() != 2 * n_ - 1)
    throw std::invalid_argument(
        "HankelSpec needs 2n-1 = " + std::to_string(2 * n_ - 1) +
        " anti-diagonal values, got " + std::to_string(antidiag_.size()));
  if (!antidiag_.allFinite())
    throw std::invalid_argument("HankelSpec anti-diagonals must be finite");
}

DeviationVector::DeviationVector(int n, Eigen::VectorXd v)
    : n_(n), v_(std::move(v)) {
  check_dimension(n_);
  if (v_.size() != n_ - 1)
    throw std::invalid_argument(
        "DeviationVector needs n-1 = " + std::to_string(n_ - 1) +
        " values, got " + std::to_string(v_.size()));
  if (!v_.allFinite())
    throw std::invalid_argument("DeviationVector values must be finite");
}

int antidiag_count(int n, int k) {
  if (k < 0 || k > 2 * n - 2)
    throw std::invalid_argument("anti-diagonal index out of range");
  return std::min(k + 1, 2 * n - 1 - k);
}

Eigen::MatrixXd basis_matrix(int n, int i) {
  check_dimension(n);
  if (i < 1 || i > n - 1)
    throw std::invalid_argument("basis index must be in [1, n-1], got " +
                                std::to_string(i));
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  const int k = n - 1 + i;
  for (int r = k - (n - 1); r <= n - 1; ++r) g(r, k - r) = 1.0;
  return g;
}

Eigen::MatrixXd materialize(const HankelSpec& spec) {
  const int n = spec.n();
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = spec.antidiag(i + j);
  return m;
}

Eigen::MatrixXd materialize(const DeviationVector& dev) {
  const int n = dev.n();
  Eigen::VectorXd anti = Eigen::VectorXd::Zero(2 * n - 1);
  anti.tail(n - 1) = dev.values();
  return materialize(HankelSpec(n, std::move(anti)));
}

Eigen::VectorXd antidiag_means(const Eigen::Ref<const Eigen::MatrixXd>& M) {
  if (M.rows() != M.cols())
    throw std::invalid_argument("anti-diagonal averaging needs a square matrix");
  const int n = static_cast<int>(M.rows());
  check_dimension(n);
  Eigen::VectorXd out(2 * n - 1);
  for (int k = 0; k <= 2 * n - 2; ++k) {
    const int lo = std::max(0, k - (n - 1));
    const int hi = std::min(k, n - 1);
    const double first = M(lo, k - lo);
    bool constant = true;
    double sum = 0.0;
    for (int i = lo; i <= hi; ++i) {
      const double v = M(i, k - i);
      constant = constant && (v == first);
      sum += v;
    }
    // A constant anti-diagonal passes through unchanged, which makes the
    // projection the exact identity on Hankel input.
    out(k) = constant ? first : sum / (hi - lo + 1);
  }
  return out;
}

HankelSpec antidiag_average(const Eigen::Ref<const Eigen::MatrixXd>& M) {
  return HankelSpec(static_cast<int>(M.rows()), antidiag_means(M));
}

}  // namespace hankelmc
