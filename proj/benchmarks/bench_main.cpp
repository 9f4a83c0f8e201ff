#include <benchmark/benchmark.h>

#include "prp/exact.hpp"
#include "prp/game.hpp"
#include "prp/genetic.hpp"
#include "prp/instance_gen.hpp"
#include "prp/policies.hpp"
#include "prp/tetris.hpp"

using namespace prp;

static void BM_Transition(benchmark::State& state) {
  const Instance inst = build_small_system();
  CheapestPolicy p(CheapestVariant::Decision);
  const auto y = run_policy(inst, p).actions;
  for (auto _ : state) benchmark::DoNotOptimize(total_cost(inst, y));
  state.SetItemsProcessed(state.iterations() * inst.horizon());
}
BENCHMARK(BM_Transition);

static void BM_CheapestMedium(benchmark::State& state) {
  const Instance inst = build_medium_system();
  for (auto _ : state) {
    CheapestPolicy p(CheapestVariant::Decision);
    benchmark::DoNotOptimize(run_policy(inst, p).cost);
  }
}
BENCHMARK(BM_CheapestMedium)->Unit(benchmark::kMillisecond);

static void BM_TetrisMedium(benchmark::State& state) {
  const Instance inst = build_medium_system();
  const auto mode = state.range(0) ? TetrisMode::Duration : TetrisMode::Frequency;
  for (auto _ : state) benchmark::DoNotOptimize(tetris(inst, mode).cost);
}
BENCHMARK(BM_TetrisMedium)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_ExactTiny(benchmark::State& state) {
  std::vector<Instance> pool;
  for (std::uint64_t s = 1; s <= 50; ++s) pool.push_back(build_tiny_system(s));
  for (auto _ : state)
    for (const auto& inst : pool) benchmark::DoNotOptimize(solve_exact(inst).cost);
}
BENCHMARK(BM_ExactTiny)->Unit(benchmark::kMillisecond);

static void BM_ExactSmallPrefix(benchmark::State& state) {
  const Instance inst = build_small_system({.horizon = static_cast<int>(state.range(0))});
  for (auto _ : state) benchmark::DoNotOptimize(solve_exact(inst).cost);
}
BENCHMARK(BM_ExactSmallPrefix)->Arg(100)->Arg(250)->Unit(benchmark::kMillisecond);

static void BM_IterativeSmall(benchmark::State& state) {
  const Instance inst = build_small_system();
  for (auto _ : state) benchmark::DoNotOptimize(solve_iterative(inst, static_cast<int>(state.range(0))).cost);
}
BENCHMARK(BM_IterativeSmall)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_Decode2(benchmark::State& state) {
  const Instance inst = build_small_system();
  const DepartureSchedule sched(inst);
  const auto gamma = named_place_order(inst, "avg-cost");
  Genes genes(sched.decision_steps().size());
  Rng rng(1);
  for (int& g : genes) g = static_cast<int>(rng.below(10));
  for (auto _ : state) {
    const auto y = decode2(genes, inst, sched, gamma);
    benchmark::DoNotOptimize(evaluate(inst, sched, y));
  }
}
BENCHMARK(BM_Decode2);
BENCHMARK_MAIN();
