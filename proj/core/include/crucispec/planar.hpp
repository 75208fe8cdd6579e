// 2D eigenproblems: the cross-junction bound state (Lambda_Pi, U_Pi) on the
// planar cross Pi, the cross-section threshold lambda_dagger^H on omega^H,
// and the asymptotic cutoff formula.
#pragma once

#include "crucispec/geometry.hpp"
#include "crucispec/grid.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace crucispec {

struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kPiSq = 9.869604401089358; // pi^2

// Ground state of the Dirichlet Laplacian on the planar cross
// Pi = {|x1| < 1/2} u {|x2| < 1/2}, truncated at |x1|, |x2| <= L.
struct PlanarCrossSolution {
  double lambda = 0.0;        // Lambda_Pi, Richardson-extrapolated
  double lambda_error = 0.0;  // extrapolation error estimate
  double second_eigenvalue = 0.0; // extrapolated; must exceed pi^2
  double L = 0.0;
  double spacing = 0.0;       // finest grid
  double decay_rate_observed = 0.0; // fitted arm log-slope
  double sym_deviation = 0.0; // max |U(x1,x2) - U(x2,x1)| on the finest grid
  double tail_coeff = 0.0;    // c in  c * exp(-gamma |x1|) * cos(pi x2)
  double moment_g = 0.0;      // integral over Pi of |y . grad U|^2
  double moment_g_error = 0.0;

  // finest-grid samples on [-n..n]^2 at `spacing`, zero outside the mask,
  // L2-normalized, positive at the origin; row-major with x1 fastest
  int n = 0;
  std::vector<double> u;

  double gamma() const; // sqrt(pi^2 - lambda), the arm decay rate
  // Bilinear interpolation with the symmetry reduction and the exponential
  // tail extension beyond the reliable window; zero outside Pi.
  double value(double x1, double x2) const;
};

// Solves on grids {4h, 2h, h} and extrapolates with the observed order (the
// junction corners degrade the nominal O(h^2) rate).  Throws ConsistencyError
// if a second eigenvalue persists below pi^2.
PlanarCrossSolution solve_planar_cross(double L = 6.0,
                                       double spacing = 1.0 / 64.0);

struct ThresholdResult {
  double lambda_dagger = 0.0; // first Dirichlet eigenvalue of omega^H
  double error = 0.0;         // discretization error estimate
  double mu_dagger = 0.0;     // model ground eigenvalue entering the asymptote
  double asymptotic_prediction = 0.0; // pi^2 + mu_dagger H^{-alpha}; NaN for custom
  double H = 0.0;
  double alpha = 0.0;
  bool half_z = false;        // Dirichlet plane at z = 0 (threshold of Q^+)
};

// First Dirichlet eigenvalue of omega^H (or of the half-section z > 0 when
// half_z), by quarter-domain FD with a first-order boundary-flux correction
// for the staircased width profile, Richardson-combined over two grids.
ThresholdResult solve_cross_section(const CrossSectionProfile &profile,
                                    double spacing = 1.0 / 64.0,
                                    bool half_z = false);

// pi^2 + mu_dagger H^{-alpha}: the asymptotic cutoff formula.  mu_dagger is
// the AbsLinear ground eigenvalue at Lambda = pi^2 for the rhombus and the
// oscillator closed form 2*pi for the ellipse.  CustomWidth is rejected.
double cutoff_asymptotic(const CrossSectionProfile &profile, double H);

// First-order boundary-placement correction for staircased Dirichlet walls:
// the FD scheme by node omission puts the wall a full spacing past each
// boundary-adjacent node; the Hadamard shape derivative of the eigenvalue
// recovers the shift from the true wall position (found by bisection on the
// inside predicate).  `v` is the conjugated eigenvector as returned by the
// solver; works for 2D and 3D grids alike.  Returns the (positive) shift.
double boundary_correction(const Grid &grid, const InsidePredicate &inside,
                           const std::vector<double> &v);

// Ground eigenvalue of -w'' + 4*lambda*|zeta| w, Richardson-extrapolated;
// cached for the default coupling.
double mu_dagger_abs_linear(double lambda = kPiSq);

// Raw (uncorrected) lowest discrete eigenvalue of the FD cross-section
// operator at the given spacings and parity folds.  This is the exact
// continuous-spectrum threshold of the matching discrete 3D sector operator,
// used for matched-cutoff counting.
double cross_section_fd_lambda(const CrossSectionProfile &profile, double hy,
                               double hz, Fold fold_y = Fold::Even,
                               Fold fold_z = Fold::Even, double tol = 1e-9,
                               std::uint64_t seed = 7);

} // namespace crucispec
