#include "crucispec/specfun.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <vector>

namespace crucispec::specfun {

namespace {

// Ai(0) = 3^{-2/3}/Gamma(2/3),  Ai'(0) = -3^{-1/3}/Gamma(1/3)
constexpr double kAi0 = 0.35502805388781723926;
constexpr double kAip0 = -0.25881940379280679841;

struct AiPair {
  double ai;
  double aip;
};

// Maclaurin series of the two standard solutions f, g of y'' = t y and their
// derivatives.  Ai = c1 f + c2' g with c1 = Ai(0), and the g-coefficient Ai'(0).
AiPair maclaurin(double t) {
  const double t3 = t * t * t;
  double f = 1.0, fp = 0.0;
  double g = t, gp = 1.0;
  double tf = 1.0; // current f-term
  double tg = t;   // current g-term
  for (int k = 0; k < 200; ++k) {
    tf *= t3 / ((3.0 * k + 2.0) * (3.0 * k + 3.0));
    tg *= t3 / ((3.0 * k + 3.0) * (3.0 * k + 4.0));
    f += tf;
    g += tg;
    // d/dt of t^{3k+3} and t^{3k+4} terms
    if (t != 0.0) {
      fp += tf * (3.0 * k + 3.0) / t;
      gp += tg * (3.0 * k + 4.0) / t;
    }
    if (std::abs(tf) < 1e-18 * std::abs(f) && std::abs(tg) < 1e-18 * std::abs(g))
      break;
  }
  return {kAi0 * f + kAip0 * g, kAi0 * fp + kAip0 * gp};
}

// Asymptotic series for t > 0, truncated at the smallest term.
AiPair asymptotic(double t, int max_terms) {
  const double T = (2.0 / 3.0) * std::pow(t, 1.5);
  const double pref = 0.5 / std::sqrt(M_PI) * std::pow(t, -0.25) * std::exp(-T);
  const double prefp = -0.5 / std::sqrt(M_PI) * std::pow(t, 0.25) * std::exp(-T);
  double ck = 1.0;
  double sum_a = 0.0, sum_ap = 0.0;
  double sign = 1.0;
  double prev = 1e300;
  for (int k = 0; k < max_terms; ++k) {
    const double term = ck * std::pow(T, -static_cast<double>(k));
    if (std::abs(term) > prev)
      break; // divergent tail reached
    prev = std::abs(term);
    const double dk = (k == 0) ? 1.0 : -ck * (6.0 * k + 1.0) / (6.0 * k - 1.0);
    sum_a += sign * term;
    sum_ap += sign * dk * std::pow(T, -static_cast<double>(k));
    // c_{k+1}/c_k from the Gamma-ratio closed form
    ck *= (3.0 * k + 0.5) * (3.0 * k + 1.5) * (3.0 * k + 2.5) /
          (54.0 * (k + 1.0) * (k + 0.5));
    sign = -sign;
  }
  return {pref * sum_a, prefp * sum_ap};
}

constexpr double kSeriesEnd = 4.0;    // Maclaurin valid up to here
constexpr double kAsympStart = 8.0;   // asymptotic valid from here
constexpr double kKnotStep = 0.25;
constexpr int kNumKnots =
    static_cast<int>((kAsympStart - kSeriesEnd) / kKnotStep) + 1;

// One Taylor step of the Airy ODE y'' = t y centered at t0.
AiPair taylor_step(double t0, AiPair y, double h) {
  std::array<double, 34> a{};
  a[0] = y.ai;
  a[1] = y.aip;
  double val = 0.0, der = 0.0;
  for (int n = 0; n + 2 < static_cast<int>(a.size()); ++n) {
    const double am1 = (n == 0) ? 0.0 : a[n - 1];
    a[n + 2] = (t0 * a[n] + am1) / ((n + 2.0) * (n + 1.0));
  }
  for (int n = static_cast<int>(a.size()) - 1; n >= 0; --n) {
    val = val * h + a[n];
    if (n >= 1)
      der = der * h + n * a[n];
  }
  return {val, der};
}

// Knots at t = 4.0, 4.25, ..., 8.0 filled by marching downward from the
// asymptotic anchor at t = 8.
const std::array<AiPair, kNumKnots> &knot_table() {
  static std::array<AiPair, kNumKnots> table;
  static std::once_flag once;
  std::call_once(once, [] {
    AiPair y = asymptotic(kAsympStart, 40);
    table[kNumKnots - 1] = y;
    for (int i = kNumKnots - 2; i >= 0; --i) {
      const double t0 = kSeriesEnd + kKnotStep * (i + 1);
      y = taylor_step(t0, y, -kKnotStep);
      table[i] = y;
    }
  });
  return table;
}

AiPair airy_pair(double t) {
  if (t <= kSeriesEnd)
    return maclaurin(t);
  if (t >= kAsympStart)
    return asymptotic(t, 40);
  const auto &table = knot_table();
  int i = static_cast<int>(std::lround((t - kSeriesEnd) / kKnotStep));
  if (i < 0)
    i = 0;
  if (i >= kNumKnots)
    i = kNumKnots - 1;
  const double t0 = kSeriesEnd + kKnotStep * i;
  return taylor_step(t0, table[i], t - t0);
}

} // namespace

double airy_ai(double t) { return airy_pair(t).ai; }

double airy_ai_prime(double t) { return airy_pair(t).aip; }

double airy_ai_asymptotic(double t, int terms) {
  return asymptotic(t, terms).ai;
}

double hermite_poly(int n, double t) {
  if (n < 0 || n > kHermiteMaxOrder)
    throw std::out_of_range("hermite_poly: order must be in [0, 60]");
  if (n == 0)
    return 1.0;
  double hm = 1.0;        // H_0
  double h = 2.0 * t;     // H_1
  for (int k = 1; k < n; ++k) {
    const double hp = 2.0 * t * h - 2.0 * k * hm;
    hm = h;
    h = hp;
  }
  return h;
}

} // namespace crucispec::specfun
