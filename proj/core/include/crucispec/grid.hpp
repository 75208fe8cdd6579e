// Uniform node-centered Cartesian grids with inside/outside masks and
// optional reflection folds at coordinate planes.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crucispec {

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fold at the plane {coordinate = 0}.  Even keeps the plane node and reflects
// the missing neighbor (Neumann-type), Odd drops the plane node (Dirichlet).
enum class Fold { None, Even, Odd };

struct AxisSpec {
  double h = 0.0;      // spacing; nodes sit at integer multiples of h
  double lo = 0.0;     // bounding interval (lo, hi); boundary nodes excluded
  double hi = 0.0;
  Fold fold = Fold::None; // folds require lo == 0

  static AxisSpec box(double h, double lo, double hi) { return {h, lo, hi, Fold::None}; }
  static AxisSpec symmetric(double h, double half, Fold fold = Fold::None) {
    return {h, fold == Fold::None ? -half : 0.0, half, fold};
  }
};

// Mask over the bounding index box.  A node is interior iff it passed the
// strictly-inside predicate; Dirichlet nodes are simply absent.
struct Grid {
  int dims = 0;
  std::array<AxisSpec, 3> axes{};
  std::array<int, 3> imin{};      // inclusive index ranges of the bounding box
  std::array<int, 3> imax{};
  std::array<std::int64_t, 3> stride{};
  std::vector<std::int64_t> dof;  // bounding-box-flat index -> dof id or -1
  std::vector<std::array<int, 3>> node; // dof id -> integer coordinates
  std::int64_t size = 0;

  double coord(int d, int i) const { return i * axes[d].h; }
  std::array<double, 3> point(std::int64_t p) const {
    return {coord(0, node[p][0]), dims > 1 ? coord(1, node[p][1]) : 0.0,
            dims > 2 ? coord(2, node[p][2]) : 0.0};
  }
  std::int64_t flat(const std::array<int, 3> &idx) const {
    std::int64_t f = 0;
    for (int d = 0; d < dims; ++d)
      f += static_cast<std::int64_t>(idx[d] - imin[d]) * stride[d];
    return f;
  }
  std::int64_t dof_at(const std::array<int, 3> &idx) const {
    for (int d = 0; d < dims; ++d)
      if (idx[d] < imin[d] || idx[d] > imax[d])
        return -1;
    return dof[flat(idx)];
  }

  // Number of folded planes the node lies on (each halves its measure).
  int plane_count(std::int64_t p) const {
    int c = 0;
    for (int d = 0; d < dims; ++d)
      if (axes[d].fold == Fold::Even && node[p][d] == 0)
        ++c;
    return c;
  }
  // Quadrature weight of the node in the folded (computational) domain:
  // prod(h_d) halved once per symmetry plane the node lies on.
  double node_measure(std::int64_t p) const {
    double m = 1.0;
    for (int d = 0; d < dims; ++d)
      m *= axes[d].h;
    return m / static_cast<double>(std::int64_t{1} << plane_count(p));
  }
  // Conjugation factor between the symmetric eigenvector component v_p and
  // the physical nodal value u_p = conj_factor * v_p.
  double conj_factor(std::int64_t p) const {
    return std::pow(std::sqrt(2.0), plane_count(p));
  }
};

using InsidePredicate = std::function<bool(const std::array<double, 3> &)>;

inline constexpr std::int64_t kDefaultNodeBudget = 30'000'000;

// Enumerates interior nodes of the bounding box that satisfy `inside`
// (evaluated strictly).  Throws ResourceError naming the required budget if
// the mask exceeds `node_budget`.
Grid build_grid(int dims, const std::array<AxisSpec, 3> &axes,
                const InsidePredicate &inside,
                std::int64_t node_budget = kDefaultNodeBudget);

} // namespace crucispec
