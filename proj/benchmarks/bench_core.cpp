// Microbenchmarks for the hot kernels: 3D matvec, Airy evaluation, det_dot.
#include <benchmark/benchmark.h>

#include "crucispec/eigensolve.hpp"
#include "crucispec/geometry.hpp"
#include "crucispec/grid.hpp"
#include "crucispec/specfun.hpp"

#include <random>

using namespace crucispec;

namespace {

std::vector<double> random_vector(std::int64_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto &x : v)
    x = u(rng);
  return v;
}

void bm_matvec3d(benchmark::State &state) {
  const CruciformDomain dom{CrossSectionProfile::ellipse(2.0), 4.0,
                            SymmetrySector::full()};
  const double h = 1.0 / state.range(0);
  std::array<AxisSpec, 3> axes{};
  axes[0] = AxisSpec::symmetric(h, 4.0, Fold::None);
  axes[1] = AxisSpec::symmetric(h, 4.0, Fold::None);
  axes[2] = AxisSpec::symmetric(h, 1.0, Fold::None);
  const Grid g = build_grid(
      3, axes, [dom](const std::array<double, 3> &x) { return dom.contains(x); });
  const auto op = assemble_laplacian(g);
  std::vector<double> x = random_vector(g.size, 7), y(g.size);
  for (auto _ : state) {
    op->apply(x.data(), y.data());
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * g.size);
}

void bm_airy_ai(benchmark::State &state) {
  double t = -8.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::airy_ai(t));
    t += 0.0625;
    if (t > 8.0)
      t = -8.0;
  }
}

void bm_det_dot(benchmark::State &state) {
  const auto a = random_vector(state.range(0), 1);
  const auto b = random_vector(state.range(0), 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(det_dot(a.data(), b.data(), a.size()));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

} // namespace

BENCHMARK(bm_matvec3d)->Arg(8)->Arg(16);
BENCHMARK(bm_airy_ai);
BENCHMARK(bm_det_dot)->Arg(1 << 12)->Arg(1 << 18);

BENCHMARK_MAIN();
