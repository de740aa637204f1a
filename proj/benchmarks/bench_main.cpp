#include "pidwb/gates.hpp"
#include "pidwb/lattice.hpp"
#include "pidwb/logic.hpp"
#include "pidwb/measures.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace pidwb;

static void BM_Antichains(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_antichains(n));
}
BENCHMARK(BM_Antichains)->DenseRange(2, 4);

static void BM_Moebius4(benchmark::State& state) {
  auto lat = lattice_for(4);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> icap(lat->size());
  for (auto& v : icap) v = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(moebius_atoms(*lat, icap));
}
BENCHMARK(BM_Moebius4);

static void BM_Redundancy(benchmark::State& state, const char* measure) {
  const auto sys = random_system(2, {3, 3, 2}, 5);
  const auto bottom = lattice_for(2)->node(0);
  for (auto _ : state) benchmark::DoNotOptimize(redundancy(measure, sys, bottom).value);
}
BENCHMARK_CAPTURE(BM_Redundancy, min, "min");
BENCHMARK_CAPTURE(BM_Redundancy, broja, "broja");
BENCHMARK_CAPTURE(BM_Redundancy, mes, "mes");
BENCHMARK_CAPTURE(BM_Redundancy, ccs, "ccs");
BENCHMARK_CAPTURE(BM_Redundancy, alpha, "alpha");
BENCHMARK_CAPTURE(BM_Redundancy, prec, "prec");

static void BM_Decompose3(benchmark::State& state) {
  const auto sys = three_copy();
  for (auto _ : state) benchmark::DoNotOptimize(decompose("mmi", sys));
}
BENCHMARK(BM_Decompose3);

static void BM_MaximalSets(benchmark::State& state) {
  const auto web = TheoremWeb::shipped();
  for (auto _ : state) benchmark::DoNotOptimize(maximal_compatible_sets({"S0", "M0", "SR"}, web));
}
BENCHMARK(BM_MaximalSets)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
