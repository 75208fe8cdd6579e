// Airy function, Hermite polynomials and related special-function helpers.
#pragma once

#include <cstdint>
#include <stdexcept>

namespace crucispec::specfun {

// Airy function Ai(t).
//
// Three evaluation regimes:
//   t <= 4         Maclaurin series (converges everywhere, cancellation-safe here)
//   4 < t < 8      Taylor continuation from a precomputed knot table; the table is
//                  filled by marching the Airy ODE downward from t = 8, which is the
//                  numerically stable direction for the decaying solution
//   t >= 8         Poincare-type asymptotic series in T = (2/3) t^{3/2} with
//                  truncation at the smallest term
// Relative accuracy better than 1e-10 on [-10, 30] (checked in tests).
double airy_ai(double t);

// Derivative Ai'(t), same regimes and accuracy policy.
double airy_ai_prime(double t);

// Evaluates only the asymptotic series with exactly `terms` terms; exposed so tests
// can check the overlap between expansions.
double airy_ai_asymptotic(double t, int terms);

// Physicists' Hermite polynomial H_n(t), three-term recurrence
// H_{n+1} = 2 t H_n - 2 n H_{n-1}.  Guarded at n <= 60: beyond that the values
// overflow double range for moderate t.
double hermite_poly(int n, double t);

inline constexpr int kHermiteMaxOrder = 60;

} // namespace crucispec::specfun
