#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crucispec/eigensolve.hpp"

#include <cmath>
#include <random>

using namespace crucispec;

namespace {

class DiagonalOperator final : public SymmetricOperator {
public:
  explicit DiagonalOperator(std::vector<double> d) : d_(std::move(d)) {}
  std::int64_t size() const override {
    return static_cast<std::int64_t>(d_.size());
  }
  void apply(const double *x, double *y) const override {
    for (size_t i = 0; i < d_.size(); ++i)
      y[i] = d_[i] * x[i];
  }

private:
  std::vector<double> d_;
};

Grid unit_square_grid(double h) {
  std::array<AxisSpec, 3> axes{};
  axes[0] = AxisSpec::box(h, 0.0, 1.0);
  axes[1] = AxisSpec::box(h, 0.0, 1.0);
  return build_grid(2, axes, [](const std::array<double, 3> &) { return true; });
}

} // namespace

TEST_CASE("diagonal operator eigenvalues") {
  const DiagonalOperator op({3.0, 1.0, 2.0, 5.0, 4.0});
  const auto s = lanczos_smallest(op, 3, 1e-10, 42);
  CHECK(s.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(s.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(s.eigenvalues[2] == doctest::Approx(3.0).epsilon(1e-9));
  for (double r : s.residuals)
    CHECK(r <= 1e-10);
}

TEST_CASE("unit square spectrum with the degenerate pair") {
  const Grid g = unit_square_grid(1.0 / 24.0);
  const auto op = assemble_laplacian(g);
  const auto s = lanczos_smallest(*op, 3, 1e-8, 7);
  // continuum values 2 pi^2, 5 pi^2 (x2); FD agrees to O(h^2) and keeps the
  // exact degeneracy of the (1,2)/(2,1) pair
  CHECK(s.eigenvalues[0] == doctest::Approx(2 * 9.8696044).epsilon(3e-3));
  CHECK(s.eigenvalues[1] == doctest::Approx(5 * 9.8696044).epsilon(6e-3));
  CHECK(s.eigenvalues[2] == doctest::Approx(s.eigenvalues[1]).epsilon(1e-9));
}

TEST_CASE("Rayleigh quotients dominate the smallest eigenvalue") {
  const Grid g = unit_square_grid(1.0 / 16.0);
  const auto op = assemble_laplacian(g);
  const auto s = lanczos_smallest(*op, 1, 1e-9, 3);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> x(g.size), y(g.size);
  for (int trial = 0; trial < 10; ++trial) {
    for (auto &v : x)
      v = dist(rng);
    op->apply(x.data(), y.data());
    const double q = det_dot(x.data(), y.data(), g.size) /
                     det_dot(x.data(), x.data(), g.size);
    CHECK(q >= s.eigenvalues[0] - 1e-8);
  }
}

TEST_CASE("spectral shift leaves eigenvalues unchanged") {
  const Grid g = unit_square_grid(1.0 / 16.0);
  const auto op = assemble_laplacian(g);
  const auto plain = lanczos_smallest(*op, 2, 1e-10, 5);
  LanczosOptions opts;
  opts.shift = 15.0; // below the smallest eigenvalue ~2 pi^2
  const auto shifted = lanczos_smallest(*op, 2, 1e-10, 5, opts);
  CHECK(shifted.eigenvalues[0] ==
        doctest::Approx(plain.eigenvalues[0]).epsilon(1e-10));
  CHECK(shifted.eigenvalues[1] ==
        doctest::Approx(plain.eigenvalues[1]).epsilon(1e-10));
}

TEST_CASE("reruns are bitwise deterministic") {
  const Grid g = unit_square_grid(1.0 / 20.0);
  const auto op = assemble_laplacian(g);
  const auto a = lanczos_smallest(*op, 2, 1e-9, 1234);
  const auto b = lanczos_smallest(*op, 2, 1e-9, 1234);
  CHECK(a.eigenvalues[0] == b.eigenvalues[0]);
  CHECK(a.eigenvalues[1] == b.eigenvalues[1]);
  for (std::int64_t i = 0; i < g.size; ++i)
    CHECK(a.vectors[0][i] == b.vectors[0][i]);
}

TEST_CASE("generalized pencil with congruence-transformed diagonal") {
  // K = L D L^T, M = L L^T  ->  pencil eigenvalues are exactly D
  Eigen::MatrixXd L = Eigen::MatrixXd::Identity(3, 3);
  L(1, 0) = 0.7;
  L(2, 0) = -0.3;
  L(2, 1) = 1.1;
  Eigen::Vector3d D(0.5, 2.0, 7.0);
  const Eigen::MatrixXd K = L * D.asDiagonal() * L.transpose();
  const Eigen::MatrixXd M = L * L.transpose();
  const auto theta = generalized_small_pencil(K, M);
  CHECK(theta[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(theta[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(theta[2] == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("identity mass pencil reduces to a plain eigenproblem") {
  Eigen::MatrixXd K(2, 2);
  K << 2.0, 1.0, 1.0, 2.0;
  const auto theta = generalized_small_pencil(K, Eigen::MatrixXd::Identity(2, 2));
  CHECK(theta[0] == doctest::Approx(1.0));
  CHECK(theta[1] == doctest::Approx(3.0));
}

TEST_CASE("indefinite mass matrix is rejected") {
  Eigen::MatrixXd K = Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(2, 2);
  M(1, 1) = -1.0;
  CHECK_THROWS_AS(generalized_small_pencil(K, M), std::invalid_argument);
}

TEST_CASE("det_dot is exact on structured input") {
  std::vector<double> x(10000, 0.5), y(10000);
  for (size_t i = 0; i < y.size(); ++i)
    y[i] = (i % 2 == 0) ? 2.0 : -2.0;
  CHECK(det_dot(x.data(), y.data(), 10000) == 0.0);
}
