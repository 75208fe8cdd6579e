// Sparse symmetric eigenvalue engine: masked Dirichlet-Laplacian stencils,
// shift-invert Lanczos with CG inner solves, and the dense generalized
// eigensolver for small Gram pencils.
#pragma once

#include "crucispec/grid.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

namespace crucispec {

struct ConvergenceError : std::runtime_error {
  explicit ConvergenceError(const std::string &msg,
                            std::vector<double> best = {})
      : std::runtime_error(msg), best_residuals(std::move(best)) {}
  std::vector<double> best_residuals;
};

class SymmetricOperator {
public:
  virtual ~SymmetricOperator() = default;
  virtual std::int64_t size() const = 0;
  virtual void apply(const double *x, double *y) const = 0;
};

// Negative Laplacian, 5-point (2D) / 7-point (3D) central stencil on the
// masked grid, Dirichlet by node omission.  Works on conjugated variables so
// the matrix stays symmetric across Even folds (the edge touching a symmetry
// plane carries a sqrt(2) factor); eigenvalues are unaffected, physical nodal
// values are v * grid.conj_factor.
class LaplacianOperator final : public SymmetricOperator {
public:
  explicit LaplacianOperator(const Grid &grid);
  std::int64_t size() const override { return grid_.size; }
  void apply(const double *x, double *y) const override;
  const Grid &grid() const { return grid_; }

private:
  const Grid &grid_;
  double inv_h2_[3] = {0.0, 0.0, 0.0};
  double diag_ = 0.0;
  // per dof, 2*dims neighbor dof ids (-1 = Dirichlet) in -x,+x,-y,+y,-z,+z
  // order, and the matching off-diagonal coefficients
  std::vector<std::int64_t> nbr_;
  std::vector<double> coef_;
};

std::unique_ptr<LaplacianOperator> assemble_laplacian(const Grid &grid);

struct SpectrumSlice {
  std::vector<double> eigenvalues;               // ascending
  std::vector<double> residuals;                 // ||Av - lambda v|| / ||v||
  std::vector<std::vector<double>> vectors;      // unit vectors, optional
  double cutoff_used = 0.0;
  int converged_count_below_cutoff = 0;
};

struct LanczosOptions {
  double shift = 0.0;       // spectral shift sigma; must stay below lambda_1
  int max_subspace = 90;    // Lanczos basis size per pass
  int max_passes = 4;       // deflated restarts (catches multiplicities)
  double cg_tol = 0.0;      // 0 -> derived from tol
  int cg_maxiter = 20000;
  bool keep_vectors = true;
};

// k smallest eigenpairs of the positive definite operator by Lanczos on
// (A - sigma I)^{-1} (CG inner solves) with full reorthogonalization; sigma
// accelerates convergence when the low eigenvalues cluster, as they do for
// strongly elongated cross-sections.  Residuals are true residuals of A.  After the first pass converges, extra passes deflated
// against the converged vectors hunt for missed copies of repeated
// eigenvalues.  Deterministic for a fixed seed and any thread count.
SpectrumSlice lanczos_smallest(const SymmetricOperator &op, int k, double tol,
                               std::uint64_t seed,
                               const LanczosOptions &opts = {});

// Eigenvalues of K c = theta M c, M symmetric positive definite (checked).
std::vector<double> generalized_small_pencil(const Eigen::MatrixXd &K,
                                             const Eigen::MatrixXd &M);

// Deterministic reductions (fixed-order blockwise sums; results do not depend
// on the OpenMP thread count).  Exposed for reuse by other modules.
double det_dot(const double *x, const double *y, std::int64_t n);

} // namespace crucispec
