// Eigenpairs of the 1D model operators -w'' + 4*Lambda*|zeta| w  and
// -w'' + 4*Lambda*zeta^2 w on the line, computed by parity-reduced
// finite differences on a half-line grid.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace crucispec {

enum class Potential1D { AbsLinear, Quadratic };
enum class Parity { Even, Odd };

struct AccuracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One eigenpair.  Samples live on the half-line grid zeta_i = i*h shared by the
// whole family; the full-line function follows from the parity tag.
struct Mode1D {
  int index = 0;          // 1-based for AbsLinear, 0-based for Quadratic
  double mu = 0.0;        // eigenvalue
  Parity parity = Parity::Even;
  std::vector<double> samples;  // w(zeta_i), i = 0..M
  std::vector<double> deriv;    // w'(zeta_i), central differences

  // Linear interpolation honoring parity; zero beyond the grid.
  double value(double zeta, double h) const;
  double derivative(double zeta, double h) const;
};

struct ModeFamily1D {
  Potential1D kind = Potential1D::AbsLinear;
  double lambda = 0.0;    // coupling Lambda in the potential
  double h = 0.0;         // grid spacing
  double half_width = 0.0; // Z; grid covers [0, Z], functions live on [-Z, Z]
  std::vector<Mode1D> modes;

  double value(int n, double zeta) const { return modes.at(n).value(zeta, h); }
  double derivative(int n, double zeta) const {
    return modes.at(n).derivative(zeta, h);
  }

  // |(w_j, w_k)_{[-W,W]} - delta_jk| for all pairs, trapezoid quadrature.
  std::vector<std::vector<double>> orthonormality_deviation(double window) const;
};

struct Grid1DSpec {
  double h = 1.0 / 256.0;
  double half_width = 0.0;  // 0 -> choose from the turning-point heuristic
};

// First `count` eigenpairs of -w'' + 4*lambda*|zeta| w = mu w.
// Eigenvalues are simple and parity alternates starting from even.
ModeFamily1D solve_abs_linear(double lambda, int count, Grid1DSpec grid = {});

// Same for -w'' + 4*lambda*zeta^2 w = mu w (closed form 2*sqrt(lambda)*(2n+1)).
ModeFamily1D solve_quadratic(double lambda, int count, Grid1DSpec grid = {});

// Eigenvalues only, Richardson-extrapolated over two grid refinements
// {h, h/2, h/4} assuming second-order convergence at each step.
std::vector<double> solve_eigenvalues_extrapolated(Potential1D kind, double lambda,
                                                   int count, Grid1DSpec grid = {});

// Closed-form oscillator eigenvalue 2*sqrt(lambda)*(2n+1), n >= 0.
inline double quadratic_eigenvalue(double lambda, int n) {
  return 2.0 * std::sqrt(lambda) * (2 * n + 1);
}

// Normalized oscillator eigenfunction expressed through Hermite polynomials.
double quadratic_eigenfunction(double lambda, int n, double zeta);

} // namespace crucispec
