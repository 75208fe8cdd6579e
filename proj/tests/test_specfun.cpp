#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crucispec/specfun.hpp"

#include <cmath>

using namespace crucispec::specfun;

// reference values frozen from an independent high-precision evaluation
TEST_CASE("airy pointwise oracles") {
  CHECK(airy_ai(0.0) == doctest::Approx(0.3550280538878172).epsilon(1e-12));
  CHECK(airy_ai_prime(0.0) ==
        doctest::Approx(-0.2588194037928068).epsilon(1e-12));
  CHECK(airy_ai(1.0) == doctest::Approx(0.1352924163128814).epsilon(1e-11));
  CHECK(airy_ai(5.0) == doctest::Approx(1.0834442813607441e-4).epsilon(1e-10));
  CHECK(airy_ai(10.0) == doctest::Approx(1.1047532552898687e-10).epsilon(1e-10));
  CHECK(airy_ai(-1.0) == doctest::Approx(0.5355608832923521).epsilon(1e-11));
  CHECK(airy_ai(-10.0) == doctest::Approx(0.0402412342660708).epsilon(1e-9));
}

TEST_CASE("airy regimes overlap") {
  // knot-table regime against the asymptotic series where the latter has
  // converged past 1e-8 (its truncation floor at t ~ 4 is only ~1e-6)
  for (double t : {6.5, 7.0, 7.9, 8.0}) {
    const double v = airy_ai(t);
    const double w = airy_ai_asymptotic(t, 12);
    CHECK(std::abs(v - w) / std::abs(v) < 1e-8);
  }
}

TEST_CASE("airy satisfies the ODE") {
  // Ai'' = t Ai via a five-point second difference
  const double h = 1e-3;
  for (double t : {-5.0, -1.0, 0.5, 2.0, 6.0, 12.0}) {
    const double dd = (-airy_ai(t - 2 * h) + 16 * airy_ai(t - h) -
                       30 * airy_ai(t) + 16 * airy_ai(t + h) -
                       airy_ai(t + 2 * h)) /
                      (12 * h * h);
    CHECK(dd == doctest::Approx(t * airy_ai(t)).epsilon(1e-6));
  }
}

TEST_CASE("airy prime consistent with central difference") {
  const double h = 1e-5;
  for (double t : {-8.0, -2.0, 0.0, 1.5, 5.0, 9.0}) {
    const double d = (airy_ai(t + h) - airy_ai(t - h)) / (2 * h);
    CHECK(airy_ai_prime(t) == doctest::Approx(d).epsilon(1e-7));
  }
}

TEST_CASE("airy zeros by independent bisection") {
  // first zeros of Ai and Ai' (reference: -2.3381074105, -1.0187929716)
  const auto bisect = [](auto f, double a, double b) {
    for (int i = 0; i < 80; ++i) {
      const double m = 0.5 * (a + b);
      (f(a) * f(m) <= 0 ? b : a) = m;
    }
    return 0.5 * (a + b);
  };
  CHECK(bisect(airy_ai, -3.0, -2.0) ==
        doctest::Approx(-2.33810741045977).epsilon(1e-10));
  CHECK(bisect(airy_ai_prime, -1.5, -0.5) ==
        doctest::Approx(-1.01879297164747).epsilon(1e-10));
}

TEST_CASE("hermite polynomials") {
  CHECK(hermite_poly(0, 0.7) == 1.0);
  CHECK(hermite_poly(1, 0.7) == doctest::Approx(1.4));
  CHECK(hermite_poly(4, 0.0) == doctest::Approx(12.0)); // H_4(0) = 12
  for (double t : {-2.0, -0.3, 0.0, 1.1, 3.0})          // H_3 = 8t^3 - 12t
    CHECK(hermite_poly(3, t) == doctest::Approx(8 * t * t * t - 12 * t));
  // recurrence closure at higher order
  const double t = 0.9;
  CHECK(hermite_poly(11, t) ==
        doctest::Approx(2 * t * hermite_poly(10, t) - 20 * hermite_poly(9, t)));
  CHECK_THROWS(hermite_poly(61, 0.0));
  CHECK_THROWS(hermite_poly(-1, 0.0));
}
