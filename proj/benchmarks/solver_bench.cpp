#include <benchmark/benchmark.h>

#include "dualnup/loss.hpp"
#include "dualnup/oracle.hpp"
#include "dualnup/solvers.hpp"
#include "dualnup/state_space.hpp"

using namespace dualnup;

static void BM_DualDecide(benchmark::State& state) {
  const ScalarLoss loss = ScalarLoss::interval(-1.0, 1.0);
  double mt = -3.0;
  for (auto _ : state) {
    const double z = dual_decide(loss, mt, 0.7, 1.0);
    benchmark::DoNotOptimize(z);
    mt = -mt;
  }
}
BENCHMARK(BM_DualDecide);

static void BM_DualNupUpdate(benchmark::State& state) {
  const ScalarLoss loss = ScalarLoss::vapnik(-1.0, 1.0, 2.0);
  for (auto _ : state) {
    const ScalarGaussian g = dual_nup_update(loss, 0.4, 1.5);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_DualNupUpdate);

static void BM_IffbddIteration(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const auto gen = generate_instance({M, M / 2, M / 2, 100}, 1);
  SolverConfig cfg;
  cfg.max_iters = 1;
  cfg.record_history = false;
  for (auto _ : state) {
    const Solution sol = solve_iffbdd(gen.instance, cfg);
    benchmark::DoNotOptimize(sol.J);
  }
  state.SetComplexityN(M);
}
BENCHMARK(BM_IffbddIteration)->Arg(10)->Arg(20)->Arg(40)->Complexity();

static void BM_IffbddSolveTiny(benchmark::State& state) {
  const auto gen = generate_instance({4, 2, 2, 8}, 1);
  for (auto _ : state) {
    const Solution sol = solve_iffbdd(gen.instance, SolverConfig{});
    benchmark::DoNotOptimize(sol.J);
  }
}
BENCHMARK(BM_IffbddSolveTiny);

static void BM_OracleTiny(benchmark::State& state) {
  const auto gen = generate_instance({4, 2, 2, 8}, 1);
  for (auto _ : state) {
    const auto sol = oracle::active_set_qp(gen.instance);
    benchmark::DoNotOptimize(sol.J);
  }
}
BENCHMARK(BM_OracleTiny);
