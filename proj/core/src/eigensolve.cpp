#include "crucispec/eigensolve.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

namespace crucispec {

namespace {
constexpr std::int64_t kDotBlock = 4096;
}

// Blockwise pairwise sum with a fixed block size: each block is summed
// serially and blocks are combined in index order, so the result is
// independent of the thread count.
double det_dot(const double *x, const double *y, std::int64_t n) {
  const std::int64_t nb = (n + kDotBlock - 1) / kDotBlock;
  std::vector<double> partial(nb, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < nb; ++b) {
    double s = 0.0;
    const std::int64_t end = std::min(n, (b + 1) * kDotBlock);
    for (std::int64_t i = b * kDotBlock; i < end; ++i)
      s += x[i] * y[i];
    partial[b] = s;
  }
  double total = 0.0;
  for (double s : partial)
    total += s;
  return total;
}

namespace {

double det_norm(const double *x, std::int64_t n) {
  return std::sqrt(det_dot(x, x, n));
}

void axpy(double a, const double *x, double *y, std::int64_t n) {
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    y[i] += a * x[i];
}

void scal(double a, double *x, std::int64_t n) {
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    x[i] *= a;
}

// Conjugate gradients for the positive definite operator, x0 = 0.
void cg_solve(const SymmetricOperator &op, const double *b, double *x,
              double rel_tol, int maxiter) {
  const std::int64_t n = op.size();
  std::vector<double> r(b, b + n), p(r), Ap(n);
  std::fill(x, x + n, 0.0);
  double rr = det_dot(r.data(), r.data(), n);
  const double stop = rel_tol * rel_tol * rr;
  if (rr == 0.0)
    return;
  for (int it = 0; it < maxiter; ++it) {
    op.apply(p.data(), Ap.data());
    const double alpha = rr / det_dot(p.data(), Ap.data(), n);
    axpy(alpha, p.data(), x, n);
    axpy(-alpha, Ap.data(), r.data(), n);
    const double rr_new = det_dot(r.data(), r.data(), n);
    if (rr_new <= stop)
      return;
    const double beta = rr_new / rr;
    rr = rr_new;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
      p[i] = r[i] + beta * p[i];
  }
  throw ConvergenceError("cg_solve: no convergence within " +
                         std::to_string(maxiter) + " iterations");
}

} // namespace

LaplacianOperator::LaplacianOperator(const Grid &grid) : grid_(grid) {
  const int dims = grid.dims;
  for (int d = 0; d < dims; ++d) {
    inv_h2_[d] = 1.0 / (grid.axes[d].h * grid.axes[d].h);
    diag_ += 2.0 * inv_h2_[d];
  }
  nbr_.assign(static_cast<size_t>(grid.size) * 2 * dims, -1);
  coef_.assign(nbr_.size(), 0.0);
  const double root2 = std::sqrt(2.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < grid.size; ++p) {
    for (int d = 0; d < dims; ++d) {
      for (int s = 0; s < 2; ++s) {
        auto idx = grid.node[p];
        const int dir = s == 0 ? -1 : 1;
        const size_t slot = static_cast<size_t>(p) * 2 * dims + 2 * d + s;
        if (grid.axes[d].fold == Fold::Even && idx[d] == 0 && dir < 0)
          continue; // reflected neighbor, absorbed into the edge factor
        idx[d] += dir;
        const std::int64_t q = grid.dof_at(idx);
        if (q < 0)
          continue;
        double c = -inv_h2_[d];
        // edge touching a symmetry plane node along the folded axis
        if (grid.axes[d].fold == Fold::Even &&
            (grid.node[p][d] == 0 || idx[d] == 0))
          c *= root2;
        nbr_[slot] = q;
        coef_[slot] = c;
      }
    }
  }
}

void LaplacianOperator::apply(const double *x, double *y) const {
  const int per = 2 * grid_.dims;
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < grid_.size; ++p) {
    double acc = diag_ * x[p];
    const size_t base = static_cast<size_t>(p) * per;
    for (int s = 0; s < per; ++s) {
      const std::int64_t q = nbr_[base + s];
      if (q >= 0)
        acc += coef_[base + s] * x[q];
    }
    y[p] = acc;
  }
}

std::unique_ptr<LaplacianOperator> assemble_laplacian(const Grid &grid) {
  if (grid.size < 1)
    throw std::invalid_argument("assemble_laplacian: empty mask");
  return std::make_unique<LaplacianOperator>(grid);
}

namespace {

struct RitzPair {
  double lambda;
  double residual;
  std::vector<double> vec;
};

class ShiftedOperator final : public SymmetricOperator {
public:
  ShiftedOperator(const SymmetricOperator &base, double shift)
      : base_(base), shift_(shift) {}
  std::int64_t size() const override { return base_.size(); }
  void apply(const double *x, double *y) const override {
    base_.apply(x, y);
    if (shift_ != 0.0) {
      const std::int64_t n = base_.size();
#pragma omp parallel for schedule(static)
      for (std::int64_t i = 0; i < n; ++i)
        y[i] -= shift_ * x[i];
    }
  }

private:
  const SymmetricOperator &base_;
  double shift_;
};

// One Lanczos pass on A^{-1}, deflated against `deflate`; returns converged
// pairs with true A-residuals.
std::vector<RitzPair> lanczos_pass(const SymmetricOperator &op, int want,
                                   double tol, double cg_tol,
                                   const LanczosOptions &opts,
                                   const std::vector<const double *> &deflate,
                                   std::mt19937_64 &rng) {
  const std::int64_t n = op.size();
  const ShiftedOperator shifted(op, opts.shift);
  const int m = static_cast<int>(
      std::min<std::int64_t>(opts.max_subspace, n - static_cast<std::int64_t>(deflate.size())));
  if (m < 1)
    return {};

  std::vector<std::vector<double>> V;
  std::vector<double> alpha, beta;
  std::vector<double> w(n), tmp(n);

  const auto reorth = [&](double *v) {
    for (int rep = 0; rep < 2; ++rep) {
      for (const double *u : deflate)
        axpy(-det_dot(v, u, n), u, v, n);
      for (const auto &u : V)
        axpy(-det_dot(v, u.data(), n), u.data(), v, n);
    }
  };

  {
    std::vector<double> v0(n);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (auto &x : v0)
      x = dist(rng);
    reorth(v0.data());
    const double nrm = det_norm(v0.data(), n);
    if (nrm == 0.0)
      return {};
    scal(1.0 / nrm, v0.data(), n);
    V.push_back(std::move(v0));
  }

  std::vector<RitzPair> out;
  bool exhausted = false;
  for (int j = 0; j < m; ++j) {
    cg_solve(shifted, V[j].data(), w.data(), cg_tol, opts.cg_maxiter);
    alpha.push_back(det_dot(w.data(), V[j].data(), n));
    reorth(w.data());
    const double b = det_norm(w.data(), n);

    const bool check = (j + 1 >= want) && ((j % 2 == 1) || j + 1 == m || b < 1e-13);
    if (check) {
      const int jm = j + 1;
      Eigen::MatrixXd T = Eigen::MatrixXd::Zero(jm, jm);
      for (int i = 0; i < jm; ++i) {
        T(i, i) = alpha[i];
        if (i + 1 < jm)
          T(i, i + 1) = T(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
      // largest theta of A^{-1} = smallest lambda of A
      const int cand = std::min(want, jm);
      out.clear();
      bool all_ok = true;
      for (int c = 0; c < cand; ++c) {
        const int col = jm - 1 - c;
        RitzPair rp;
        rp.lambda = opts.shift + 1.0 / es.eigenvalues()(col);
        rp.vec.assign(n, 0.0);
        for (int i = 0; i < jm; ++i)
          axpy(es.eigenvectors()(i, col), V[i].data(), rp.vec.data(), n);
        const double nrm = det_norm(rp.vec.data(), n);
        scal(1.0 / nrm, rp.vec.data(), n);
        op.apply(rp.vec.data(), tmp.data());
        axpy(-rp.lambda, rp.vec.data(), tmp.data(), n);
        rp.residual = det_norm(tmp.data(), n);
        all_ok = all_ok && rp.residual <= tol;
        out.push_back(std::move(rp));
      }
      if ((all_ok && cand == want) || exhausted)
        return out;
    }

    if (b < 1e-13) {
      exhausted = true;
      break;
    }
    beta.push_back(b);
    if (j + 1 < m) {
      scal(1.0 / b, w.data(), n);
      V.push_back(w);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const RitzPair &a, const RitzPair &b) { return a.lambda < b.lambda; });
  return out;
}

} // namespace

SpectrumSlice lanczos_smallest(const SymmetricOperator &op, int k, double tol,
                               std::uint64_t seed, const LanczosOptions &opts) {
  if (k < 1 || k > op.size())
    throw std::invalid_argument("lanczos_smallest: bad k");
  if (tol <= 0.0)
    throw std::invalid_argument("lanczos_smallest: tol must be positive");
  const double cg_tol =
      opts.cg_tol > 0.0 ? opts.cg_tol
                        : std::max(1e-13, std::min(1e-9, 1e-3 * tol));

  std::vector<RitzPair> converged;
  std::vector<double> best_residuals;
  for (int pass = 0; pass < opts.max_passes; ++pass) {
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * (pass + 1));
    std::vector<const double *> deflate;
    for (const auto &c : converged)
      deflate.push_back(c.vec.data());
    const int have = static_cast<int>(converged.size());
    // after the first pass, probe for missed copies of repeated eigenvalues
    const int want = pass == 0 ? k : std::max(1, k - have);
    if (static_cast<std::int64_t>(have) >= op.size())
      break;
    auto pairs = lanczos_pass(op, want, tol, cg_tol, opts, deflate, rng);
    best_residuals.clear();
    for (const auto &p : pairs)
      best_residuals.push_back(p.residual);

    bool accepted_any = false;
    for (auto &p : pairs) {
      if (p.residual > tol)
        continue;
      if (have >= k) {
        // probe pass: only accept if it undercuts the current k-th value
        const double kth = converged[k - 1].lambda;
        if (p.lambda > kth + std::max(10.0 * tol, 1e-10 * std::abs(kth)))
          continue;
      }
      converged.push_back(std::move(p));
      accepted_any = true;
    }
    std::sort(converged.begin(), converged.end(),
              [](const RitzPair &a, const RitzPair &b) {
                return a.lambda < b.lambda;
              });
    if (static_cast<int>(converged.size()) >= k && !accepted_any)
      break; // probe found nothing new below the k-th value
  }

  if (static_cast<int>(converged.size()) < k)
    throw ConvergenceError("lanczos_smallest: only " +
                               std::to_string(converged.size()) + " of " +
                               std::to_string(k) +
                               " eigenpairs converged within the pass budget",
                           best_residuals);
  converged.resize(k);

  SpectrumSlice slice;
  for (auto &p : converged) {
    slice.eigenvalues.push_back(p.lambda);
    slice.residuals.push_back(p.residual);
    if (opts.keep_vectors)
      slice.vectors.push_back(std::move(p.vec));
  }
  return slice;
}

std::vector<double> generalized_small_pencil(const Eigen::MatrixXd &K,
                                             const Eigen::MatrixXd &M) {
  if (K.rows() != K.cols() || M.rows() != M.cols() || K.rows() != M.rows())
    throw std::invalid_argument("generalized_small_pencil: shape mismatch");
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument(
        "generalized_small_pencil: mass matrix not positive definite "
        "(trial family degenerate; H too small)");
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(K, M);
  std::vector<double> theta(es.eigenvalues().data(),
                            es.eigenvalues().data() + K.rows());
  return theta;
}

} // namespace crucispec
