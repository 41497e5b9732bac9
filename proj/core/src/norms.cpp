#include <hankelmc/norms.hpp>

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace hankelmc {

namespace {

void check_square(const Eigen::Ref<const Eigen::MatrixXd>& M) {
  if (M.rows() != M.cols() || M.rows() == 0)
    throw std::invalid_argument("expected a nonempty square matrix, got " +
                                std::to_string(M.rows()) + "x" +
                                std::to_string(M.cols()));
}

Eigen::VectorXd eigenvalues_of(const Eigen::Ref<const Eigen::MatrixXd>& M) {
  check_square(M);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw EigenSolverError(static_cast<int>(M.rows()),
                           static_cast<int>(M.cols()));
  return es.eigenvalues();
}

}  // namespace

EigenSolverError::EigenSolverError(int rows, int cols)
    : std::runtime_error("symmetric eigensolver failed to converge on a " +
                         std::to_string(rows) + "x" + std::to_string(cols) +
                         " matrix"),
      rows_(rows),
      cols_(cols) {}

double nuclear_norm(const Eigen::Ref<const Eigen::MatrixXd>& M) {
  return eigenvalues_of(M).cwiseAbs().sum();
}

double spectral_norm(const Eigen::Ref<const Eigen::MatrixXd>& M) {
  return eigenvalues_of(M).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd svt(const Eigen::Ref<const Eigen::MatrixXd>& M, double tau) {
  check_square(M);
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw std::invalid_argument("svt threshold must be positive and finite");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  if (es.info() != Eigen::Success)
    throw EigenSolverError(static_cast<int>(M.rows()),
                           static_cast<int>(M.cols()));
  Eigen::VectorXd shrunk = es.eigenvalues();
  for (Eigen::Index i = 0; i < shrunk.size(); ++i) {
    const double a = std::abs(shrunk(i)) - tau;
    shrunk(i) = a > 0.0 ? std::copysign(a, shrunk(i)) : 0.0;
  }
  const auto& V = es.eigenvectors();
  return V * shrunk.asDiagonal() * V.transpose();
}

}  // namespace hankelmc
