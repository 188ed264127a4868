#include <benchmark/benchmark.h>

#include "k3sc/decision.hpp"
#include "k3sc/pell.hpp"

using namespace k3sc;

static void BM_Factorize(benchmark::State& state) {
  Int n = 963761198400;  // highly composite
  for (auto _ : state) benchmark::DoNotOptimize(factorize(n));
}
BENCHMARK(BM_Factorize);

static void BM_FundamentalAutomorph(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(fundamental_automorph(1, state.range(0)));
}
BENCHMARK(BM_FundamentalAutomorph)->Arg(61)->Arg(421)->Arg(1621);

static void BM_SolveOrbits(benchmark::State& state) {
  FormEquation eq{1, state.range(0), 8};
  for (auto _ : state) benchmark::DoNotOptimize(solve_orbits(eq));
}
BENCHMARK(BM_SolveOrbits)->Arg(17)->Arg(421);

static void BM_DecideRho2(benchmark::State& state) {
  Context ctx = make_context(2, 2, 1, 1, 17, 1);
  for (auto _ : state) benchmark::DoNotOptimize(decide_rho2(ctx));
}
BENCHMARK(BM_DecideRho2);

static void BM_OracleDecide(benchmark::State& state) {
  Context ctx = make_context(2, 2, 1, 1, 17, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle_decide_bounded(ctx, state.range(0)));
}
BENCHMARK(BM_OracleDecide)->Arg(100)->Arg(10000);

BENCHMARK_MAIN();
