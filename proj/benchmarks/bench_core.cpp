#include <benchmark/benchmark.h>

#include <cmath>

#include "fdw/funcspace.hpp"
#include "fdw/propagator.hpp"
#include "fdw/solver.hpp"
#include "fdw/spectral.hpp"

using namespace fdw;

namespace {

Grid grid_for(const benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  return Grid(dim, static_cast<int>(state.range(1)), 32.0);
}

RealField bump(const Grid& g) {
  return RealField::sample(g, [](const std::array<double, 3>& x) {
    return std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
  });
}

void BM_ForwardInverse(benchmark::State& state) {
  const auto g = grid_for(state);
  const auto f = bump(g);
  for (auto _ : state) {
    auto back = inverse_transform(forward_transform(f));
    benchmark::DoNotOptimize(back);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_ForwardInverse)->Args({1, 4096})->Args({1, 65536})->Args({2, 256})->Args({3, 64});

void BM_PairPropagator(benchmark::State& state) {
  const auto g = grid_for(state);
  const PairPropagator prop(g, 1.5, 0.5);
  const auto u = forward_transform(bump(g));
  for (auto _ : state) {
    auto a = u, b = u;
    prop.apply(a, b);
    benchmark::DoNotOptimize(a);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_PairPropagator)->Args({1, 4096})->Args({2, 256});

void BM_MidpointStep(benchmark::State& state) {
  const auto g = grid_for(state);
  SolverConfig cfg;
  cfg.nonlinearity = Nonlinearity(NonlinearityKind::absolute, 3.0);
  const ExponentialMidpoint stepper(g, cfg);
  auto u = 1e-3 * bump(g);
  auto u_hat = forward_transform(u);
  auto ut_hat = SpectralField(g);
  for (auto _ : state) {
    stepper.advance(u_hat, ut_hat, u);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_MidpointStep)->Args({1, 4096})->Args({2, 256});

void BM_BesovNorm(benchmark::State& state) {
  const auto g = grid_for(state);
  const auto f = bump(g);
  for (auto _ : state) benchmark::DoNotOptimize(besov_norm_lp(f, 0.5, 2.0, 2.0, true));
}
BENCHMARK(BM_BesovNorm)->Args({1, 4096})->Args({2, 256});

}  // namespace

BENCHMARK_MAIN();
