#include <hankelmc/hankel.hpp>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <doctest.h>

using namespace hankelmc;

namespace {

Eigen::MatrixXd random_square(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = u(rng);
  return m;
}

// Oracle for antidiag_means: scan the whole matrix per anti-diagonal,
// independent of the library's traversal.
Eigen::VectorXd scan_means(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  Eigen::VectorXd out(2 * n - 1);
  for (int k = 0; k <= 2 * n - 2; ++k) {
    double sum = 0.0;
    int count = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i + j == k) {
          sum += m(i, j);
          ++count;
        }
    out(k) = sum / count;
  }
  return out;
}

// Ones on anti-diagonal k, including the pinned region (k < n).
Eigen::MatrixXd indicator(int n, int k) {
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i + j == k) e(i, j) = 1.0;
  return e;
}

}  // namespace

TEST_CASE("antidiag_count matches the closed form and tiles the matrix") {
  for (int n = 2; n <= 8; ++n) {
    int total = 0;
    for (int k = 0; k <= 2 * n - 2; ++k) {
      const int c = antidiag_count(n, k);
      CHECK(c == std::min(k + 1, 2 * n - 1 - k));
      total += c;
    }
    CHECK(total == n * n);
  }
  CHECK_THROWS_AS(antidiag_count(4, -1), std::invalid_argument);
  CHECK_THROWS_AS(antidiag_count(4, 7), std::invalid_argument);
}

TEST_CASE("basis_matrix places n-i ones on the i-th free anti-diagonal") {
  for (int n = 2; n <= 6; ++n) {
    for (int i = 1; i <= n - 1; ++i) {
      const Eigen::MatrixXd g = basis_matrix(n, i);
      CHECK((g - g.transpose()).norm() == 0.0);
      CHECK(g.sum() == static_cast<double>(n - i));
      CHECK((g - indicator(n, n - 1 + i)).norm() == 0.0);
    }
  }
  CHECK_THROWS_AS(basis_matrix(4, 0), std::invalid_argument);
  CHECK_THROWS_AS(basis_matrix(4, 4), std::invalid_argument);
  CHECK_THROWS_AS(basis_matrix(1, 1), std::invalid_argument);
}

TEST_CASE("HankelSpec validates its inputs") {
  CHECK_THROWS_AS(HankelSpec(1, Eigen::VectorXd::Zero(1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(HankelSpec(3, Eigen::VectorXd::Zero(4)),
                  std::invalid_argument);
  CHECK_THROWS_AS(HankelSpec(kMaxDim + 1,
                             Eigen::VectorXd::Zero(2 * (kMaxDim + 1) - 1)),
                  std::invalid_argument);
  Eigen::VectorXd bad = Eigen::VectorXd::Zero(5);
  bad(2) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(HankelSpec(3, bad), std::invalid_argument);

  const HankelSpec ok(3, Eigen::VectorXd::LinSpaced(5, 0.0, 4.0));
  CHECK(ok.n() == 3);
  CHECK(ok.known_count() == 3);
  CHECK(ok.antidiag(4) == 4.0);
}

TEST_CASE("DeviationVector validates its inputs and detects zero") {
  CHECK_THROWS_AS(DeviationVector(3, Eigen::VectorXd::Zero(3)),
                  std::invalid_argument);
  Eigen::VectorXd bad(2);
  bad << 1.0, std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(DeviationVector(3, bad), std::invalid_argument);

  CHECK(DeviationVector(3, Eigen::VectorXd::Zero(2)).is_zero());
  Eigen::VectorXd v(2);
  v << 0.0, 1e-300;
  CHECK_FALSE(DeviationVector(3, v).is_zero());
}

TEST_CASE("materialize is constant along anti-diagonals") {
  const Eigen::VectorXd anti = Eigen::VectorXd::LinSpaced(9, 1.0, 9.0);
  const Eigen::MatrixXd m = materialize(HankelSpec(5, anti));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(m(i, j) == anti(i + j));
  CHECK((m - m.transpose()).norm() == 0.0);
}

TEST_CASE("materialize(DeviationVector) equals the basis expansion") {
  const int n = 5;
  Eigen::VectorXd v(n - 1);
  v << 0.3, -1.2, 0.0, 2.5;
  const Eigen::MatrixXd h = materialize(DeviationVector(n, v));

  Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i <= n - 1; ++i) expect += v(i - 1) * basis_matrix(n, i);
  CHECK((h - expect).norm() == 0.0);

  // the pinned region stays exactly zero
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i + j <= n - 1) CHECK(h(i, j) == 0.0);
}

TEST_CASE("antidiag_means agrees with a full-matrix scan") {
  for (int n : {2, 3, 7}) {
    const Eigen::MatrixXd m = random_square(n, 100 + n);
    const Eigen::VectorXd got = antidiag_means(m);
    const Eigen::VectorXd want = scan_means(m);
    REQUIRE(got.size() == 2 * n - 1);
    for (int k = 0; k < got.size(); ++k)
      CHECK(got(k) == doctest::Approx(want(k)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(antidiag_means(Eigen::MatrixXd::Zero(2, 3)),
                  std::invalid_argument);
}

TEST_CASE("antidiag_means round-trips Hankel matrices bitwise") {
  Eigen::VectorXd anti(9);
  anti << 0.1, 1.0 / 3.0, -0.7, 5e-17, 0.0, 1.1, -2.4, 0.3, 0.94;
  const HankelSpec spec(5, anti);
  const Eigen::VectorXd back = antidiag_means(materialize(spec));
  for (int k = 0; k < 9; ++k) CHECK(back(k) == anti(k));
}

TEST_CASE("antidiag_average is the Frobenius-orthogonal projection") {
  const int n = 6;
  const Eigen::MatrixXd m = random_square(n, 7);
  const Eigen::MatrixXd proj = materialize(antidiag_average(m));

  // the residual is orthogonal to every anti-diagonal indicator
  for (int k = 0; k <= 2 * n - 2; ++k) {
    const double inner = ((m - proj).cwiseProduct(indicator(n, k))).sum();
    CHECK(std::abs(inner) <= 1e-12);
  }

  // idempotent
  const Eigen::MatrixXd again = materialize(antidiag_average(proj));
  CHECK((again - proj).norm() == 0.0);
}
