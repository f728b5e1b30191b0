#include <benchmark/benchmark.h>

#include "plap/eigensolve.hpp"
#include "plap/potential.hpp"
#include "plap/weak_forms.hpp"

using namespace plap;

static void BM_EnergyGrad(benchmark::State& state) {
  auto g = build_grid(DomainSpec::interval(0.0, 1.0),
                      static_cast<int>(state.range(0)));
  Field V = sample(PotentialSpec::bump(), g);
  Field u(g, 0.0);
  for (int j : g->interior_idx) u[j] = 1.0 + 0.1 * (j % 7);
  for (auto _ : state) {
    Field grad = energy_grad(u, V, 2.0);
    benchmark::DoNotOptimize(grad.values.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(g->size()));
}
BENCHMARK(BM_EnergyGrad)->Arg(256)->Arg(1024)->Arg(4096);

static void BM_PrincipalEig(benchmark::State& state) {
  auto g = build_grid(DomainSpec::interval(0.0, 1.0),
                      static_cast<int>(state.range(0)));
  Field V = sample(PotentialSpec::constant(0.0), g);
  SolverConfig cfg;
  cfg.tol_lambda = 1e-9;
  cfg.tol_residual = 1e-6;
  cfg.max_iter = 200000;
  for (auto _ : state) {
    EigenPair e = principal_eig(g, V, cfg);
    benchmark::DoNotOptimize(e.lambda);
  }
}
BENCHMARK(BM_PrincipalEig)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_PrincipalEigBall(benchmark::State& state) {
  auto g = build_grid(DomainSpec::radial_ball(2, 8.0),
                      static_cast<int>(state.range(0)));
  Field V = sample(PotentialSpec::radial_well(-1.0, 1.0, 1.0), g);
  SolverConfig cfg;
  cfg.tol_lambda = 1e-9;
  cfg.tol_residual = 1e-6;
  cfg.max_iter = 200000;
  for (auto _ : state) {
    EigenPair e = principal_eig(g, V, cfg);
    benchmark::DoNotOptimize(e.lambda);
  }
}
BENCHMARK(BM_PrincipalEigBall)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
