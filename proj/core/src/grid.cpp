#include "crucispec/grid.hpp"

#include <cmath>

namespace crucispec {

namespace {

// Index range of nodes i*h strictly inside (lo, hi), honoring the fold.
// Nodes landing on the interval ends (within rounding slack) are boundary
// nodes and excluded.
std::pair<int, int> axis_range(const AxisSpec &ax) {
  if (ax.h <= 0.0)
    throw std::invalid_argument("build_grid: spacing must be positive");
  if (ax.hi <= ax.lo)
    throw std::invalid_argument("build_grid: empty axis interval");
  if (ax.fold != Fold::None && ax.lo != 0.0)
    throw std::invalid_argument("build_grid: folds require lo == 0");
  const double slack = 1e-9 * ax.h;
  int lo_i, hi_i;
  if (ax.fold == Fold::Even)
    lo_i = 0;
  else if (ax.fold == Fold::Odd)
    lo_i = 1;
  else
    lo_i = static_cast<int>(std::floor(ax.lo / ax.h + 1.0 - slack));
  if (lo_i * ax.h <= ax.lo + slack && ax.fold == Fold::None)
    ++lo_i; // boundary node
  hi_i = static_cast<int>(std::ceil(ax.hi / ax.h - 1.0 + slack));
  if (hi_i * ax.h >= ax.hi - slack)
    --hi_i;
  if (hi_i < lo_i)
    throw std::invalid_argument("build_grid: no interior nodes on an axis");
  return {lo_i, hi_i};
}

} // namespace

Grid build_grid(int dims, const std::array<AxisSpec, 3> &axes,
                const InsidePredicate &inside, std::int64_t node_budget) {
  if (dims < 1 || dims > 3)
    throw std::invalid_argument("build_grid: dims must be 1, 2 or 3");
  Grid g;
  g.dims = dims;
  g.axes = axes;
  std::int64_t box = 1;
  for (int d = 0; d < dims; ++d) {
    auto [lo, hi] = axis_range(axes[d]);
    g.imin[d] = lo;
    g.imax[d] = hi;
    box *= hi - lo + 1;
  }
  if (box > node_budget)
    throw ResourceError("build_grid: bounding box of " + std::to_string(box) +
                        " nodes exceeds budget " + std::to_string(node_budget) +
                        "; raise the budget to at least " + std::to_string(box) +
                        " or coarsen the spacing");
  // x varies fastest
  g.stride[0] = 1;
  for (int d = 1; d < dims; ++d)
    g.stride[d] =
        g.stride[d - 1] * (g.imax[d - 1] - g.imin[d - 1] + 1);

  g.dof.assign(box, -1);
  std::array<int, 3> idx{g.imin[0], dims > 1 ? g.imin[1] : 0,
                         dims > 2 ? g.imin[2] : 0};
  const auto bump = [&](auto &i) {
    for (int d = 0; d < dims; ++d) {
      if (++i[d] <= g.imax[d])
        return true;
      i[d] = g.imin[d];
    }
    return false;
  };
  do {
    std::array<double, 3> x{idx[0] * axes[0].h, dims > 1 ? idx[1] * axes[1].h : 0.0,
                            dims > 2 ? idx[2] * axes[2].h : 0.0};
    if (inside(x)) {
      g.dof[g.flat(idx)] = g.size++;
      g.node.push_back({idx[0], dims > 1 ? idx[1] : 0, dims > 2 ? idx[2] : 0});
    }
  } while (bump(idx));
  if (g.size == 0)
    throw std::invalid_argument("build_grid: empty mask");
  return g;
}

} // namespace crucispec
