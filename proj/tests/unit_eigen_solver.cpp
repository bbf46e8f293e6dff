#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "tcdirac/eigen_solver.hpp"

using namespace tcdirac;

namespace {

SpMat to_sparse(const Eigen::MatrixXd& m) {
  SpMat s(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) s.insert(i, j) = m(i, j);
  s.makeCompressed();
  return s;
}

}  // namespace

TEST_CASE("diagonal pencil: nearest eigenvalue to the target") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 2);
  A(0, 0) = 2;
  A(1, 1) = 3;
  const SpMat As = to_sparse(A);
  const SpMat Ss = to_sparse(Eigen::MatrixXd::Identity(2, 2));
  const PencilResult r = pencil_eigen_near(As, Ss, 1.9);
  CHECK(r.eigenvalue == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(std::abs(r.vector[0]) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(r.vector[1]) <= 1e-10);
}

TEST_CASE("identity pencil A = S") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<Real> dist(-1, 1);
  Eigen::MatrixXd B(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) B(i, j) = dist(rng);
  Eigen::MatrixXd S = B * B.transpose() + 8.0 * Eigen::MatrixXd::Identity(8, 8);
  const SpMat Ss = to_sparse(S);
  const PencilResult r = pencil_eigen_near(Ss, Ss, 3.7);
  CHECK(r.eigenvalue == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("random 20x20 pencil matches the dense oracle") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<Real> dist(-1, 1);
  const int n = 20;
  Eigen::MatrixXd A(n, n), B(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      A(i, j) = dist(rng);
      B(i, j) = dist(rng);
    }
  A = ((A + A.transpose()) / 2).eval();
  Eigen::MatrixXd S = B * B.transpose() + n * Eigen::MatrixXd::Identity(n, n);

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> oracle(A, S);
  REQUIRE(oracle.info() == Eigen::Success);

  const SpMat As = to_sparse(A);
  const SpMat Ss = to_sparse(S);
  for (Real target : {-0.5, 0.0, 0.11}) {
    int nearest = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(oracle.eigenvalues()[i] - target) <
          std::abs(oracle.eigenvalues()[nearest] - target))
        nearest = i;
    PencilOptions opt;
    opt.shift_offset = 1e-3;
    const PencilResult r = pencil_eigen_near(As, Ss, target, opt);
    CHECK(std::abs(r.eigenvalue - oracle.eigenvalues()[nearest]) <= 1e-12);
    // S-normalization
    CHECK(r.vector.dot(S * r.vector) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("shift collision with an eigenvalue still converges") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(3, 3);
  A(0, 0) = 1;
  A(1, 1) = 2;
  A(2, 2) = 5;
  const SpMat As = to_sparse(A);
  const SpMat Ss = to_sparse(Eigen::MatrixXd::Identity(3, 3));
  PencilOptions opt;
  opt.shift_offset = 1.0;  // target 3 - 1 = 2 hits the middle eigenvalue exactly
  const PencilResult r = pencil_eigen_near(As, Ss, 3.0, opt);
  CHECK(r.eigenvalue == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("non-convergence carries the best iterate") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<Real> dist(-1, 1);
  const int n = 12;
  Eigen::MatrixXd A(n, n), B(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      A(i, j) = dist(rng);
      B(i, j) = dist(rng);
    }
  A = ((A + A.transpose()) / 2).eval();
  Eigen::MatrixXd S = B * B.transpose() + n * Eigen::MatrixXd::Identity(n, n);
  PencilOptions opt;
  opt.max_inner = 1;
  opt.tol_inner = 1e-300;
  bool threw = false;
  try {
    pencil_eigen_near(to_sparse(A), to_sparse(S), 0.0, opt);
  } catch (const pencil_failure& e) {
    threw = true;
    CHECK(e.best.vector.size() == n);
    CHECK(std::isfinite(e.best.eigenvalue));
  }
  CHECK(threw);
}
