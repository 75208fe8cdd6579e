#include "crucispec/modes1d.hpp"

#include "crucispec/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <lapacke.h>

namespace crucispec {

namespace {

double potential(Potential1D kind, double lambda, double zeta) {
  return kind == Potential1D::AbsLinear ? 4.0 * lambda * std::abs(zeta)
                                        : 4.0 * lambda * zeta * zeta;
}

// Smallest `count` eigenpairs of the half-line FD operator with the given
// parity condition at zeta = 0 and Dirichlet at zeta = Z = M*h.
// Even parity keeps the node at 0 with the sqrt(2)-conjugated stencil that
// keeps the matrix symmetric; odd parity drops it.
struct HalfLineResult {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> vectors; // conjugated basis, per eigenpair
};

HalfLineResult solve_half_line(Potential1D kind, double lambda, Parity parity,
                               int count, double h, int M) {
  const int n = (parity == Parity::Even) ? M : M - 1;
  const int i0 = (parity == Parity::Even) ? 0 : 1;
  std::vector<double> diag(n), offdiag(n > 1 ? n - 1 : 1);
  const double inv_h2 = 1.0 / (h * h);
  for (int i = 0; i < n; ++i)
    diag[i] = 2.0 * inv_h2 + potential(kind, lambda, (i0 + i) * h);
  for (int i = 0; i + 1 < n; ++i)
    offdiag[i] = -inv_h2;
  if (parity == Parity::Even)
    offdiag[0] = -std::sqrt(2.0) * inv_h2;

  std::vector<double> w(n), z(static_cast<size_t>(n) * count);
  std::vector<lapack_int> isuppz(2 * std::max(count, 1));
  lapack_int m_found = 0;
  const lapack_int info = LAPACKE_dstevr(
      LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(), offdiag.data(), 0.0, 0.0, 1,
      count, 0.0, &m_found, w.data(), z.data(), n, isuppz.data());
  if (info != 0)
    throw std::runtime_error("solve_half_line: dstevr failed, info=" +
                             std::to_string(info));

  HalfLineResult out;
  out.eigenvalues.assign(w.begin(), w.begin() + m_found);
  for (int j = 0; j < m_found; ++j)
    out.vectors.emplace_back(z.begin() + static_cast<size_t>(j) * n,
                             z.begin() + static_cast<size_t>(j + 1) * n);
  return out;
}

// Turning-point heuristic with margin, re-validated by the tail check below.
double default_half_width(Potential1D kind, double lambda, int count) {
  const double mu_top =
      (kind == Potential1D::AbsLinear)
          ? std::pow(4.0 * lambda, 2.0 / 3.0) * (1.8 + 1.8 * count)
          : quadratic_eigenvalue(lambda, count);
  const double turn = (kind == Potential1D::AbsLinear)
                          ? mu_top / (4.0 * lambda)
                          : std::sqrt(mu_top / (4.0 * lambda));
  return std::max(8.0, 3.0 * turn + 2.0);
}

ModeFamily1D solve_family(Potential1D kind, double lambda, int count,
                          Grid1DSpec grid) {
  if (lambda <= 0.0)
    throw std::invalid_argument("solve_family: lambda must be positive");
  if (count < 1)
    throw std::invalid_argument("solve_family: count must be >= 1");

  ModeFamily1D fam;
  fam.kind = kind;
  fam.lambda = lambda;
  fam.h = grid.h;
  double Z = grid.half_width > 0.0 ? grid.half_width
                                   : default_half_width(kind, lambda, count);
  const int M = static_cast<int>(std::ceil(Z / grid.h));
  Z = M * grid.h;
  fam.half_width = Z;

  const int per_parity = count / 2 + 1;
  auto even = solve_half_line(kind, lambda, Parity::Even, per_parity, grid.h, M);
  auto odd = solve_half_line(kind, lambda, Parity::Odd, per_parity, grid.h, M);

  struct Tagged {
    double mu;
    Parity parity;
    const std::vector<double> *vec;
  };
  std::vector<Tagged> all;
  for (size_t j = 0; j < even.eigenvalues.size(); ++j)
    all.push_back({even.eigenvalues[j], Parity::Even, &even.vectors[j]});
  for (size_t j = 0; j < odd.eigenvalues.size(); ++j)
    all.push_back({odd.eigenvalues[j], Parity::Odd, &odd.vectors[j]});
  std::sort(all.begin(), all.end(),
            [](const Tagged &a, const Tagged &b) { return a.mu < b.mu; });
  if (static_cast<int>(all.size()) < count)
    throw std::runtime_error("solve_family: not enough eigenpairs returned");

  for (int nidx = 0; nidx < count; ++nidx) {
    const auto &t = all[nidx];
    Mode1D mode;
    mode.index = (kind == Potential1D::AbsLinear) ? nidx + 1 : nidx;
    mode.mu = t.mu;
    mode.parity = t.parity;

    // Un-conjugate to physical samples on nodes 0..M.
    mode.samples.assign(M + 1, 0.0);
    if (t.parity == Parity::Even) {
      mode.samples[0] = (*t.vec)[0] * std::sqrt(2.0);
      for (int i = 1; i < M; ++i)
        mode.samples[i] = (*t.vec)[i];
    } else {
      for (int i = 1; i < M; ++i)
        mode.samples[i] = (*t.vec)[i - 1];
    }

    // Full-line L2 normalization: 2*h*(sum_{i>=1} u_i^2 + u_0^2/2) = 1.
    double nrm2 = 0.5 * mode.samples[0] * mode.samples[0];
    for (int i = 1; i <= M; ++i)
      nrm2 += mode.samples[i] * mode.samples[i];
    const double scale = 1.0 / std::sqrt(2.0 * grid.h * nrm2);
    for (auto &s : mode.samples)
      s *= scale;

    // Sign convention: w(0) > 0 for even modes, w'(0) > 0 for odd ones.
    const bool flip = (t.parity == Parity::Even) ? mode.samples[0] < 0.0
                                                 : mode.samples[1] < 0.0;
    if (flip)
      for (auto &s : mode.samples)
        s = -s;

    mode.deriv.assign(M + 1, 0.0);
    for (int i = 1; i < M; ++i)
      mode.deriv[i] = (mode.samples[i + 1] - mode.samples[i - 1]) / (2.0 * grid.h);
    mode.deriv[0] = (t.parity == Parity::Even)
                        ? 0.0
                        : mode.samples[1] / grid.h; // odd: (u1 - (-u1))/2h
    mode.deriv[M] = (0.0 - mode.samples[M - 1]) / (2.0 * grid.h);

    // Tail check: the decay window must be wide enough.
    double peak = 0.0;
    for (double s : mode.samples)
      peak = std::max(peak, std::abs(s));
    if (std::abs(mode.samples[M - 1]) > 1e-12 * peak)
      throw AccuracyError(
          "solve_family: eigenfunction tail has not decayed at Z=" +
          std::to_string(Z) + "; increase half_width to about " +
          std::to_string(1.5 * Z));

    fam.modes.push_back(std::move(mode));
  }
  return fam;
}

} // namespace

double Mode1D::value(double zeta, double h) const {
  const double a = std::abs(zeta);
  const double sgn =
      (parity == Parity::Even || zeta >= 0.0) ? 1.0 : -1.0;
  const double u = a / h;
  const int i = static_cast<int>(u);
  if (i + 1 >= static_cast<int>(samples.size()))
    return 0.0;
  const double frac = u - i;
  return sgn * ((1.0 - frac) * samples[i] + frac * samples[i + 1]);
}

double Mode1D::derivative(double zeta, double h) const {
  const double a = std::abs(zeta);
  // w'(zeta) is odd for even modes and even for odd modes
  const double sgn =
      (parity == Parity::Odd || zeta >= 0.0) ? 1.0 : -1.0;
  const double u = a / h;
  const int i = static_cast<int>(u);
  if (i + 1 >= static_cast<int>(deriv.size()))
    return 0.0;
  const double frac = u - i;
  return sgn * ((1.0 - frac) * deriv[i] + frac * deriv[i + 1]);
}

std::vector<std::vector<double>>
ModeFamily1D::orthonormality_deviation(double window) const {
  const int N = static_cast<int>(modes.size());
  const int M = std::min(static_cast<int>(window / h),
                         static_cast<int>(modes.front().samples.size()) - 1);
  std::vector<std::vector<double>> dev(N, std::vector<double>(N, 0.0));
  for (int j = 0; j < N; ++j)
    for (int k = j; k < N; ++k) {
      double integral = 0.0;
      if (modes[j].parity == modes[k].parity) {
        // even-even or odd-odd integrand is even: 2 * \int_0^W, trapezoid
        double s = 0.5 * modes[j].samples[0] * modes[k].samples[0];
        for (int i = 1; i < M; ++i)
          s += modes[j].samples[i] * modes[k].samples[i];
        s += 0.5 * modes[j].samples[M] * modes[k].samples[M];
        integral = 2.0 * h * s;
      } // opposite parity: exactly zero on a symmetric window
      const double target = (j == k) ? 1.0 : 0.0;
      dev[j][k] = dev[k][j] = std::abs(integral - target);
    }
  return dev;
}

ModeFamily1D solve_abs_linear(double lambda, int count, Grid1DSpec grid) {
  return solve_family(Potential1D::AbsLinear, lambda, count, grid);
}

ModeFamily1D solve_quadratic(double lambda, int count, Grid1DSpec grid) {
  return solve_family(Potential1D::Quadratic, lambda, count, grid);
}

std::vector<double> solve_eigenvalues_extrapolated(Potential1D kind,
                                                   double lambda, int count,
                                                   Grid1DSpec grid) {
  std::vector<std::vector<double>> mus;
  for (int r = 0; r < 3; ++r) {
    Grid1DSpec g = grid;
    g.h = grid.h / (1 << r);
    if (g.half_width == 0.0)
      g.half_width = default_half_width(kind, lambda, count);
    auto fam = solve_family(kind, lambda, count, g);
    std::vector<double> mu;
    for (const auto &m : fam.modes)
      mu.push_back(m.mu);
    mus.push_back(std::move(mu));
  }
  // two second-order Richardson steps, then one fourth-order step
  std::vector<double> out(count);
  for (int n = 0; n < count; ++n) {
    const double r1 = (4.0 * mus[1][n] - mus[0][n]) / 3.0;
    const double r2 = (4.0 * mus[2][n] - mus[1][n]) / 3.0;
    out[n] = (16.0 * r2 - r1) / 15.0;
  }
  return out;
}

double quadratic_eigenfunction(double lambda, int n, double zeta) {
  const double sl = std::sqrt(lambda);
  const double norm = // (2^n n! sqrt(pi))^{-1/2}
      std::exp(-0.5 * (n * std::log(2.0) + std::lgamma(n + 1.0) +
                       0.5 * std::log(M_PI)));
  return norm * std::pow(2.0 * sl, 0.25) * std::exp(-sl * zeta * zeta) *
         specfun::hermite_poly(n, std::sqrt(2.0 * sl) * zeta);
}

} // namespace crucispec
