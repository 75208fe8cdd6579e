// The trial family Phi_n^H, its mass/stiffness Gram matrices by dimensional
// reduction, and the max-min certificates behind the eigenvalue-count bound.
#pragma once

#include "crucispec/geometry.hpp"
#include "crucispec/modes1d.hpp"
#include "crucispec/planar.hpp"

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace crucispec {

// Smooth mollifier: 1 on |tau| <= 1/4, 0 on |tau| >= 1/2, C-infinity monotone
// bridge (normalized integral of exp(-1/(s(1-s)))).
double chi(double tau);
double chi_prime(double tau);

// Phi_n^H(x) = H^{-alpha/4} chi_H(zeta) w_n(zeta) U_Pi(y / h(z)), with the
// compressed coordinate zeta = H^{-alpha/2} z and chi_H(zeta) =
// chi(2 H^{-alpha} zeta).  Modes are AbsLinear for the rhombus and Quadratic
// for the ellipse, both at coupling Lambda_Pi.
struct TrialFamily {
  CrossSectionProfile profile;
  int N = 0;
  double lambda_pi = 0.0;
  double lambda_pi_error = 0.0;
  double moment_g = 0.0;       // integral over Pi of |y . grad U_Pi|^2
  double arm_halflength = 6.0; // membership checks only
  ModeFamily1D modes;
  const PlanarCrossSolution *planar = nullptr; // owned by the caller

  double chi_h(double zeta) const;
  double chi_h_prime(double zeta) const;
};

TrialFamily make_trial_family(const CrossSectionProfile &profile,
                              const PlanarCrossSolution &planar, int N);

// Pointwise trial value at x = (x1, x2, z) in Q^H; domain error outside.
double evaluate_trial(const TrialFamily &family, int n,
                      const std::array<double, 3> &x);

struct GramPair {
  Eigen::MatrixXd M; // (Phi_j, Phi_k)
  Eigen::MatrixXd K; // (grad Phi_j, grad Phi_k)
  // stiffness decomposition, K = I1 + J1 + J2 + J3 + J3^T
  Eigen::MatrixXd I1, J1, J2, J3;
  double dev_m = 0.0; // ||M - I||_max
  double dev_k = 0.0; // ||K - Lambda_Pi I||_max
  double H = 0.0;
};

// Both Grams by the 1D reduction: the y-integrals collapse through
//   int |U^H|^2 dy = h(z)^2,   int |grad_y U^H|^2 dy = Lambda_Pi,
//   int U^H dz U^H dy = h h',  int |dz U^H|^2 dy = h'^2 * moment_g,
// leaving weighted zeta-quadratures of the 1D modes.
GramPair assemble_gram(const TrialFamily &family);

Eigen::MatrixXd mass_gram(const TrialFamily &family);
Eigen::MatrixXd stiffness_gram(const TrialFamily &family);

struct MaxMinCertificate {
  double H = 0.0;
  int N = 0;
  std::vector<double> theta;      // pencil eigenvalues, ascending
  std::vector<double> theta_lo;   // recomputed at lambda_pi -/+ its error bar
  std::vector<double> theta_hi;
  std::vector<double> predicted;  // Lambda_Pi + mu_n H^{-alpha}
  double lambda_dagger = 0.0;
  int certified_count = 0;        // #\{theta_n < lambda_dagger\} <= #sigma_d
};

MaxMinCertificate maxmin_certificate(const TrialFamily &family,
                                     const GramPair &gram,
                                     double lambda_dagger);

struct SweepRow {
  double H = 0.0;
  std::vector<double> theta;
  std::vector<double> predicted;
  double lambda_dagger_numeric = 0.0;
  double lambda_dagger_asymptotic = 0.0;
  int certified = 0;
};

struct SweepResult {
  int N = 0;
  std::vector<SweepRow> rows;
  double empirical_H_N = 0.0; // smallest swept H certifying all N (0 if none)
  double empirical_C_N = 0.0; // max_n (theta_n - Lambda_Pi) H^alpha over rows
};

SweepResult theorem1_sweep(ProfileKind kind, const PlanarCrossSolution &planar,
                           int N, const std::vector<double> &H_list,
                           double section_spacing = 1.0 / 64.0);

} // namespace crucispec
