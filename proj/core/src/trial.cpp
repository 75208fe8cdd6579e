#include "crucispec/trial.hpp"

#include "crucispec/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace crucispec {

namespace {

// Cumulative table of the normalized bridge psi(s) = C int_0^s e^{-1/(t(1-t))}
// on [0, 1]; psi(0)=0, psi(1)=1.
constexpr int kBridgeN = 4096;

const std::vector<double> &bridge_table() {
  static std::vector<double> table;
  static std::once_flag once;
  std::call_once(once, [] {
    table.assign(kBridgeN + 1, 0.0);
    const auto f = [](double t) {
      if (t <= 0.0 || t >= 1.0)
        return 0.0;
      return std::exp(-1.0 / (t * (1.0 - t)));
    };
    const double h = 1.0 / kBridgeN;
    for (int i = 1; i <= kBridgeN; ++i)
      table[i] = table[i - 1] +
                 h / 6.0 * (f((i - 1) * h) + 4.0 * f((i - 0.5) * h) + f(i * h));
    for (auto &v : table)
      v /= table[kBridgeN];
  });
  return table;
}

double bridge(double s) {
  if (s <= 0.0)
    return 0.0;
  if (s >= 1.0)
    return 1.0;
  const auto &t = bridge_table();
  const double u = s * kBridgeN;
  const int i = std::min(kBridgeN - 1, static_cast<int>(u));
  return t[i] + (u - i) * (t[i + 1] - t[i]);
}

double bridge_density(double s) {
  if (s <= 0.0 || s >= 1.0)
    return 0.0;
  static const double norm = [] {
    // 1 / int_0^1 e^{-1/(t(1-t))} dt, recovered from the table build
    const auto &t = bridge_table();
    (void)t;
    // re-integrate once for the constant
    const auto f = [](double x) {
      return (x <= 0.0 || x >= 1.0) ? 0.0 : std::exp(-1.0 / (x * (1.0 - x)));
    };
    double acc = 0.0;
    const double h = 1.0 / kBridgeN;
    for (int i = 1; i <= kBridgeN; ++i)
      acc += h / 6.0 * (f((i - 1) * h) + 4.0 * f((i - 0.5) * h) + f(i * h));
    return 1.0 / acc;
  }();
  return norm * std::exp(-1.0 / (s * (1.0 - s)));
}

Potential1D potential_for(ProfileKind kind) {
  switch (kind) {
  case ProfileKind::Rhombus:
    return Potential1D::AbsLinear;
  case ProfileKind::Ellipse:
    return Potential1D::Quadratic;
  case ProfileKind::CustomWidth:
    throw std::invalid_argument(
        "trial family: no 1D model for custom width profiles");
  }
  return Potential1D::AbsLinear;
}

TrialFamily family_at(const CrossSectionProfile &profile,
                      const PlanarCrossSolution &planar, int N,
                      double lambda) {
  if (N < 1)
    throw std::invalid_argument("make_trial_family: N must be >= 1");
  TrialFamily fam;
  fam.profile = profile;
  fam.N = N;
  fam.lambda_pi = lambda;
  fam.lambda_pi_error = planar.lambda_error;
  fam.moment_g = planar.moment_g;
  fam.arm_halflength = planar.L;
  fam.planar = &planar;
  Grid1DSpec spec; // defaults: h = 1/256, auto half-width
  fam.modes = potential_for(profile.kind) == Potential1D::AbsLinear
                  ? solve_abs_linear(lambda, N, spec)
                  : solve_quadratic(lambda, N, spec);
  return fam;
}

} // namespace

double chi(double tau) {
  const double a = std::abs(tau);
  if (a <= 0.25)
    return 1.0;
  if (a >= 0.5)
    return 0.0;
  return 1.0 - bridge((a - 0.25) / 0.25);
}

double chi_prime(double tau) {
  const double a = std::abs(tau);
  if (a <= 0.25 || a >= 0.5)
    return 0.0;
  const double d = -bridge_density((a - 0.25) / 0.25) / 0.25;
  return tau > 0.0 ? d : -d;
}

double TrialFamily::chi_h(double zeta) const {
  return chi(2.0 * std::pow(profile.H, -profile.alpha) * zeta);
}

double TrialFamily::chi_h_prime(double zeta) const {
  const double s = 2.0 * std::pow(profile.H, -profile.alpha);
  return s * chi_prime(s * zeta);
}

TrialFamily make_trial_family(const CrossSectionProfile &profile,
                              const PlanarCrossSolution &planar, int N) {
  return family_at(profile, planar, N, planar.lambda);
}

double evaluate_trial(const TrialFamily &family, int n,
                      const std::array<double, 3> &x) {
  if (n < 0 || n >= family.N)
    throw std::out_of_range("evaluate_trial: mode index");
  const auto &prof = family.profile;
  const double eps = 1e-12;
  const auto in_closure = [&](double y, double tau) {
    if (std::abs(tau) > 0.5 * prof.H + eps)
      return false;
    const double t = std::clamp(tau, -0.5 * prof.H, 0.5 * prof.H);
    return std::abs(y) <= 0.5 * prof.width(t) + eps;
  };
  const double L = family.arm_halflength;
  if (std::abs(x[0]) > L + eps || std::abs(x[1]) > L + eps ||
      (!in_closure(x[1], x[2]) && !in_closure(x[0], x[2])))
    throw DomainError("evaluate_trial: point outside Q^H");

  const double alpha = prof.alpha, H = prof.H;
  const double zeta = std::pow(H, -alpha / 2.0) * x[2];
  const double c = family.chi_h(zeta);
  if (c == 0.0)
    return 0.0;
  const double w = family.modes.value(n, zeta);
  const double h = prof.width(x[2]);
  const double u = family.planar->value(x[0] / h, x[1] / h);
  return std::pow(H, -alpha / 4.0) * c * w * u;
}

GramPair assemble_gram(const TrialFamily &family) {
  const auto &prof = family.profile;
  const int N = family.N;
  const double H = prof.H, alpha = prof.alpha;
  const double Hma = std::pow(H, -alpha);       // H^{-alpha}
  const double Hma2 = std::pow(H, -alpha / 2.0); // H^{-alpha/2}
  const double Hpa2 = std::pow(H, alpha / 2.0);
  const double hm = family.modes.h;
  const double A = std::min(family.modes.half_width, std::pow(H, alpha) / 4.0);
  const int Mint = static_cast<int>(std::floor(A / hm + 1e-9));

  GramPair g;
  g.H = H;
  g.M = Eigen::MatrixXd::Zero(N, N);
  g.I1 = g.M;
  g.J1 = g.M;
  g.J2 = g.M;
  g.J3 = g.M;

  for (int j = 0; j < N; ++j)
    for (int k = j; k < N; ++k) {
      if (family.modes.modes[j].parity != family.modes.modes[k].parity)
        continue; // exact zero by parity
      double m = 0, i1 = 0, j1 = 0, j2 = 0, j3 = 0, j3t = 0;
      for (int i = 0; i <= Mint; ++i) {
        const double weight = (i == 0 || i == Mint) ? 0.5 : 1.0;
        const double zeta = i * hm;
        const double z = zeta * Hpa2;
        const double h = prof.width(z);
        const double hp = prof.width_derivative(z);
        const double ch = family.chi_h(zeta);
        const double chp = family.chi_h_prime(zeta);
        const double wj = family.modes.modes[j].samples[i];
        const double wk = family.modes.modes[k].samples[i];
        const double wpj = family.modes.modes[j].deriv[i];
        const double wpk = family.modes.modes[k].deriv[i];
        const double Xj = ch * wj, Xk = ch * wk;
        const double Xpj = chp * wj + ch * wpj;
        const double Xpk = chp * wk + ch * wpk;
        m += weight * Xj * Xk * h * h;
        i1 += weight * Xj * Xk;
        j1 += weight * Xpj * Xpk * h * h;
        j2 += weight * Xj * Xk * hp * hp;
        j3 += weight * Xpj * Xk * h * hp;
        j3t += weight * Xpk * Xj * h * hp;
      }
      // even integrands on the symmetric window: twice the half-line integral
      const double q = 2.0 * hm;
      g.M(j, k) = g.M(k, j) = q * m;
      g.I1(j, k) = g.I1(k, j) = family.lambda_pi * q * i1;
      g.J1(j, k) = g.J1(k, j) = Hma * q * j1;
      g.J2(j, k) = g.J2(k, j) = family.moment_g * q * j2;
      g.J3(j, k) = Hma2 * q * j3;
      if (k != j)
        g.J3(k, j) = Hma2 * q * j3t;
    }

  // the two gradient cross terms are transposes of each other, so the
  // diagonal correctly picks up 2 * J3_nn
  g.K = g.I1 + g.J1 + g.J2 + g.J3 + g.J3.transpose();
  g.dev_m = (g.M - Eigen::MatrixXd::Identity(N, N)).cwiseAbs().maxCoeff();
  g.dev_k =
      (g.K - family.lambda_pi * Eigen::MatrixXd::Identity(N, N)).cwiseAbs().maxCoeff();
  return g;
}

Eigen::MatrixXd mass_gram(const TrialFamily &family) {
  return assemble_gram(family).M;
}

Eigen::MatrixXd stiffness_gram(const TrialFamily &family) {
  return assemble_gram(family).K;
}

MaxMinCertificate maxmin_certificate(const TrialFamily &family,
                                     const GramPair &gram,
                                     double lambda_dagger) {
  MaxMinCertificate cert;
  cert.H = gram.H;
  cert.N = family.N;
  cert.lambda_dagger = lambda_dagger;
  cert.theta = generalized_small_pencil(gram.K, gram.M);
  for (int n = 0; n < family.N; ++n)
    cert.predicted.push_back(family.lambda_pi +
                             family.modes.modes[n].mu *
                                 std::pow(gram.H, -family.profile.alpha));
  cert.theta_lo = cert.theta;
  cert.theta_hi = cert.theta;
  if (family.lambda_pi_error > 0.0 && family.planar != nullptr) {
    for (const double sign : {-1.0, 1.0}) {
      TrialFamily shifted =
          family_at(family.profile, *family.planar, family.N,
                    family.lambda_pi + sign * family.lambda_pi_error);
      const GramPair sg = assemble_gram(shifted);
      const auto st = generalized_small_pencil(sg.K, sg.M);
      for (int n = 0; n < family.N; ++n) {
        cert.theta_lo[n] = std::min(cert.theta_lo[n], st[n]);
        cert.theta_hi[n] = std::max(cert.theta_hi[n], st[n]);
      }
    }
  }
  cert.certified_count = static_cast<int>(std::count_if(
      cert.theta.begin(), cert.theta.end(),
      [lambda_dagger](double t) { return t < lambda_dagger; }));
  return cert;
}

SweepResult theorem1_sweep(ProfileKind kind, const PlanarCrossSolution &planar,
                           int N, const std::vector<double> &H_list,
                           double section_spacing) {
  SweepResult out;
  out.N = N;
  for (const double H : H_list) {
    const CrossSectionProfile prof = kind == ProfileKind::Rhombus
                                         ? CrossSectionProfile::rhombus(H)
                                         : CrossSectionProfile::ellipse(H);
    const TrialFamily fam = make_trial_family(prof, planar, N);
    const GramPair gram = assemble_gram(fam);
    const ThresholdResult thr = solve_cross_section(prof, section_spacing);
    const MaxMinCertificate cert =
        maxmin_certificate(fam, gram, thr.lambda_dagger);
    SweepRow row;
    row.H = H;
    row.theta = cert.theta;
    row.predicted = cert.predicted;
    row.lambda_dagger_numeric = thr.lambda_dagger;
    row.lambda_dagger_asymptotic = thr.asymptotic_prediction;
    row.certified = cert.certified_count;
    if (row.certified >= N && out.empirical_H_N == 0.0)
      out.empirical_H_N = H;
    for (int n = 0; n < N; ++n)
      out.empirical_C_N =
          std::max(out.empirical_C_N,
                   (row.theta[n] - planar.lambda) * std::pow(H, prof.alpha));
    out.rows.push_back(std::move(row));
  }
  return out;
}

} // namespace crucispec
