#include <benchmark/benchmark.h>

#include <blocklab/auction.hpp>
#include <blocklab/knapsack.hpp>
#include <blocklab/pipeline.hpp>
#include <blocklab/rng.hpp>

using namespace blocklab;

namespace {

KnapsackInstance sized_instance(int n, std::uint64_t seed) {
  KnapsackInstance inst;
  Rng rng(seed);
  inst.capacity = 25 * n;
  for (int i = 0; i < n; ++i)
    inst.items.push_back({i + 1, rng.uniform(1, 50), rng.uniform(0, 1000)});
  return inst;
}

BidProfile sized_profile(int n, std::uint64_t seed) {
  BidProfile p;
  Rng rng(seed);
  p.capacity = n;
  for (int i = 0; i < n; ++i) p.bids.push_back({i + 1, rng.uniform(1, 100), rng.uniform(1, 3)});
  return p;
}

void bm_solve_exact(benchmark::State& state) {
  auto inst = sized_instance((int)state.range(0), 9);
  for (auto _ : state) benchmark::DoNotOptimize(solve_exact_value(inst));
}
BENCHMARK(bm_solve_exact)->Arg(50)->Arg(200)->Arg(1000);

void bm_greedy(benchmark::State& state) {
  auto inst = sized_instance((int)state.range(0), 9);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_01(inst, true).total_size);
}
BENCHMARK(bm_greedy)->Arg(50)->Arg(200)->Arg(1000);

void bm_brute_force(benchmark::State& state) {
  auto inst = sized_instance((int)state.range(0), 9);
  for (auto _ : state) benchmark::DoNotOptimize(solve_brute_force(inst).total_size);
}
BENCHMARK(bm_brute_force)->Arg(12)->Arg(16)->Arg(20);

void bm_critical_payments(benchmark::State& state) {
  auto p = sized_profile((int)state.range(0), 5);
  for (auto _ : state) benchmark::DoNotOptimize(critical_payments(p).revenue);
}
BENCHMARK(bm_critical_payments)->Arg(8)->Arg(32)->Arg(128);

void bm_builder_market_block(benchmark::State& state) {
  EraConfig cfg;
  cfg.era = Era::PbsEra;
  cfg.relay_count = 1;
  cfg.builder_count = (int)state.range(0);
  cfg.block_reward = 100;
  MempoolParams pool;
  pool.tx_count = 120;
  auto input = generate_slot_input(3, pool);
  for (auto _ : state) {
    PipelineState st;
    st.fees.base_fee = 5;
    benchmark::DoNotOptimize(run_block(cfg, input, st).gas_used);
  }
}
BENCHMARK(bm_builder_market_block)->Arg(1)->Arg(3)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
