#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crucispec/planar.hpp"

#include <cmath>

using namespace crucispec;

TEST_CASE("mu_dagger matches the scaled first Airy-prime zero") {
  // ground state of -w'' + 4 pi^2 |zeta| w: mu = (4 pi^2)^{2/3} |a'_1|
  const double expected = std::pow(4.0 * kPiSq, 2.0 / 3.0) * 1.01879297164747;
  CHECK(mu_dagger_abs_linear() == doctest::Approx(expected).epsilon(1e-7));
}

TEST_CASE("planar cross at coarse resolution") {
  const auto sol = solve_planar_cross(6.0, 1.0 / 16.0);
  CHECK(sol.lambda > 0.0);
  CHECK(sol.lambda < kPiSq);
  CHECK(sol.second_eigenvalue > kPiSq);
  CHECK(sol.sym_deviation < 1e-10);
  CHECK(sol.gamma() == doctest::Approx(std::sqrt(kPiSq - sol.lambda)));
  // swap symmetry and support of the interpolated eigenfunction
  CHECK(sol.value(1.3, 0.21) == doctest::Approx(sol.value(0.21, 1.3)));
  CHECK(sol.value(0.0, 0.0) > 0.0);
  CHECK(sol.value(2.0, 2.0) == 0.0); // outside both strips
  CHECK(sol.moment_g > 0.0);
}

TEST_CASE("threshold exceeds pi^2 and the half section lies above") {
  const auto profile = CrossSectionProfile::rhombus(10.0);
  const auto full = solve_cross_section(profile, 1.0 / 32.0, false);
  const auto half = solve_cross_section(profile, 1.0 / 32.0, true);
  CHECK(full.lambda_dagger > kPiSq);
  // omega^+ (Dirichlet mid-plane) is a subdomain: monotonicity
  CHECK(half.lambda_dagger > full.lambda_dagger);
  CHECK(full.asymptotic_prediction ==
        doctest::Approx(kPiSq +
                        mu_dagger_abs_linear() * std::pow(10.0, -2.0 / 3.0)));
}

TEST_CASE("raw FD section eigenvalue is monotone under domain inclusion") {
  // omega^{H} grows with H for the ellipse, so the eigenvalue decreases
  const auto small = CrossSectionProfile::ellipse(4.0);
  const auto large = CrossSectionProfile::ellipse(8.0);
  const double h = 1.0 / 32.0;
  const double a = cross_section_fd_lambda(small, h, h);
  const double b = cross_section_fd_lambda(large, h, h);
  CHECK(a > b);
}

TEST_CASE("odd z fold selects the antisymmetric branch") {
  const auto profile = CrossSectionProfile::ellipse(4.0);
  const double h = 1.0 / 32.0;
  const double even = cross_section_fd_lambda(profile, h, h, Fold::Even, Fold::Even);
  const double odd = cross_section_fd_lambda(profile, h, h, Fold::Even, Fold::Odd);
  CHECK(odd > even);
}

TEST_CASE("cutoff asymptotic formula") {
  const auto rh = CrossSectionProfile::rhombus(100.0);
  const auto el = CrossSectionProfile::ellipse(100.0);
  CHECK(cutoff_asymptotic(rh, 100.0) ==
        doctest::Approx(kPiSq + mu_dagger_abs_linear() * std::pow(100.0, -2.0 / 3.0)));
  CHECK(cutoff_asymptotic(el, 100.0) ==
        doctest::Approx(kPiSq + 2.0 * M_PI / std::sqrt(100.0)));
}
