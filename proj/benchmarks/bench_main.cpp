#include <benchmark/benchmark.h>

#include "fairdiv/fairness.hpp"
#include "fairdiv/harness.hpp"
#include "fairdiv/mechanisms.hpp"
#include "fairdiv/strategy.hpp"

using namespace fairdiv;

namespace {

Instance pinned_instance(int agents, int goods) {
  GenConfig gc;
  gc.agents = agents;
  gc.goods = goods;
  gc.value_hi = 99;
  Rng rng(12345);
  return gen_instance(gc, rng);
}

void bm_round_robin(benchmark::State& state) {
  const Instance inst =
      pinned_instance(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const BidProfile bids = inst.truthful_profile();
  for (auto _ : state) benchmark::DoNotOptimize(round_robin(bids));
}
BENCHMARK(bm_round_robin)->Args({2, 8})->Args({4, 16})->Args({8, 24});

void bm_cut_phase(benchmark::State& state) {
  const Instance inst = pinned_instance(2, static_cast<int>(state.range(0)));
  const BidVector& b1 = inst.values[0];
  for (auto _ : state) benchmark::DoNotOptimize(cut_phase(b1));
}
BENCHMARK(bm_cut_phase)->Arg(8)->Arg(12)->Arg(16);

void bm_mms_two_parts(benchmark::State& state) {
  const Instance inst = pinned_instance(2, static_cast<int>(state.range(0)));
  GoodSet all(inst.m);
  for (int g = 0; g < inst.m; ++g) all[g] = g;
  MmsBudget budget;
  budget.two_parts_max_goods = 20;
  for (auto _ : state)
    benchmark::DoNotOptimize(mms(inst, 0, 2, all, budget));
}
BENCHMARK(bm_mms_two_parts)->Arg(12)->Arg(16)->Arg(20);

void bm_mms_three_parts(benchmark::State& state) {
  const Instance inst = pinned_instance(3, static_cast<int>(state.range(0)));
  GoodSet all(inst.m);
  for (int g = 0; g < inst.m; ++g) all[g] = g;
  for (auto _ : state) benchmark::DoNotOptimize(mms(inst, 0, 3, all));
}
BENCHMARK(bm_mms_three_parts)->Arg(8)->Arg(10)->Arg(12);

void bm_rr_enumerate_pne(benchmark::State& state) {
  const Instance inst =
      pinned_instance(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(rr_enumerate_pne(inst));
}
BENCHMARK(bm_rr_enumerate_pne)->Args({2, 4})->Args({2, 5})->Args({3, 4})
    ->Unit(benchmark::kMillisecond);

void bm_rr_best_response(benchmark::State& state) {
  const Instance inst = pinned_instance(2, static_cast<int>(state.range(0)));
  RankingProfile profile;
  for (int i = 0; i < inst.n; ++i)
    profile.rankings.push_back(induced_ranking(inst.truthful_bid(i)));
  for (auto _ : state)
    benchmark::DoNotOptimize(rr_best_response(inst, 0, profile));
}
BENCHMARK(bm_rr_best_response)->Arg(6)->Arg(7)->Arg(8)
    ->Unit(benchmark::kMillisecond);

void bm_mcc_construct_pne(benchmark::State& state) {
  const Instance inst = pinned_instance(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mcc_construct_pne(inst));
}
BENCHMARK(bm_mcc_construct_pne)->Arg(4)->Arg(6)->Arg(8)
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
