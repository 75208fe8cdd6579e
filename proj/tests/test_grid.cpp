#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "crucispec/grid.hpp"

#include <cmath>

using namespace crucispec;

namespace {
const InsidePredicate all_inside = [](const std::array<double, 3> &) {
  return true;
};
}

TEST_CASE("1D strip mask keeps strictly interior nodes") {
  // (0, 1) at h = 1/4: nodes 1/4, 1/2, 3/4 -> 3 dofs, walls absent
  std::array<AxisSpec, 3> axes{};
  axes[0] = AxisSpec::box(0.25, 0.0, 1.0);
  const Grid g = build_grid(1, axes, all_inside);
  CHECK(g.size == 3);
  CHECK(g.dof_at({g.imin[0] - 1, 0, 0}) == -1);
  for (std::int64_t p = 0; p < g.size; ++p) {
    const double x = g.point(p)[0];
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("even and odd folds partition the symmetric grid") {
  // nodes of the full interval = plane node + two copies of the open half
  const auto count = [](Fold f) {
    std::array<AxisSpec, 3> axes{};
    axes[0] = AxisSpec::symmetric(0.125, 1.0, f);
    return build_grid(1, axes, all_inside).size;
  };
  const auto full = count(Fold::None);
  const auto even = count(Fold::Even);
  const auto odd = count(Fold::Odd);
  CHECK(even == odd + 1); // Even keeps z = 0, Odd drops it
  CHECK(full == even + odd);
}

TEST_CASE("2D fold partition on an anisotropic mask") {
  const InsidePredicate inside = [](const std::array<double, 3> &x) {
    return x[0] * x[0] + 4.0 * x[1] * x[1] < 1.0;
  };
  const auto count = [&inside](Fold f0, Fold f1) {
    std::array<AxisSpec, 3> axes{};
    axes[0] = AxisSpec::symmetric(0.1, 1.0, f0);
    axes[1] = AxisSpec::symmetric(0.1, 0.5, f1);
    return build_grid(2, axes, inside).size;
  };
  const auto full = count(Fold::None, Fold::None);
  std::int64_t sum = 0;
  for (Fold f0 : {Fold::Even, Fold::Odd})
    for (Fold f1 : {Fold::Even, Fold::Odd})
      sum += count(f0, f1);
  CHECK(full == sum); // each octant node counted once across parity sectors
}

TEST_CASE("node measure and conjugation on symmetry planes") {
  std::array<AxisSpec, 3> axes{};
  axes[0] = AxisSpec::symmetric(0.25, 1.0, Fold::Even);
  axes[1] = AxisSpec::symmetric(0.25, 1.0, Fold::Even);
  const Grid g = build_grid(2, axes, all_inside);
  for (std::int64_t p = 0; p < g.size; ++p) {
    const int planes = (g.node[p][0] == 0 ? 1 : 0) + (g.node[p][1] == 0 ? 1 : 0);
    CHECK(g.plane_count(p) == planes);
    CHECK(g.node_measure(p) ==
          doctest::Approx(0.0625 / std::pow(2.0, planes)));
    CHECK(g.conj_factor(p) == doctest::Approx(std::pow(std::sqrt(2.0), planes)));
  }
}

TEST_CASE("node budget enforcement") {
  std::array<AxisSpec, 3> axes{};
  axes[0] = AxisSpec::box(1e-3, 0.0, 1.0);
  axes[1] = AxisSpec::box(1e-3, 0.0, 1.0);
  CHECK_THROWS_AS(build_grid(2, axes, all_inside, 1000), ResourceError);
}

TEST_CASE("dof indexing round-trips") {
  const InsidePredicate inside = [](const std::array<double, 3> &x) {
    return std::abs(x[0]) + std::abs(x[1]) < 0.9;
  };
  std::array<AxisSpec, 3> axes{};
  axes[0] = AxisSpec::symmetric(0.2, 1.0);
  axes[1] = AxisSpec::symmetric(0.2, 1.0);
  const Grid g = build_grid(2, axes, inside);
  for (std::int64_t p = 0; p < g.size; ++p)
    CHECK(g.dof_at(g.node[p]) == p);
}
