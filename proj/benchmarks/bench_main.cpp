#include <benchmark/benchmark.h>

#include <random>

#include "smc/classify.hpp"

using namespace smc;

static Matrix random_matrix(const Field& F, int n, std::mt19937_64& rng) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = static_cast<Elem>(rng() % F.order());
  return m;
}

static void Rref(benchmark::State& state) {
  auto F = Field::make(3);
  std::mt19937_64 rng(7);
  const auto m = random_matrix(*F, static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(la::rref(*F, m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(Rref)->RangeMultiplier(2)->Range(8, 128)->Complexity();

static void FoldTensor(benchmark::State& state) {
  auto R = make_quotient_algebra(Field::make(2), {0, 0, 1});
  auto L = thm32_lambda(R, 0);
  for (auto _ : state) benchmark::DoNotOptimize(tensor_over_R(L, 1, L).result()->dim());
}
BENCHMARK(FoldTensor);

static void EnumerateBimodules(benchmark::State& state) {
  auto R = make_quotient_algebra(Field::make(2), {0, 0, 1});
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_bimodules(R, 2, d).size());
}
BENCHMARK(EnumerateBimodules)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void Coherence(benchmark::State& state) {
  auto S = thm32_structure({Field::make(2), 0, 1, 0, true});
  for (auto _ : state) benchmark::DoNotOptimize(coherence_report(S).clean());
}
BENCHMARK(Coherence)->Unit(benchmark::kMillisecond);

static void Picard(benchmark::State& state) {
  auto R = make_quotient_algebra(Field::make(2, 2), {0, 0, 1});
  for (auto _ : state) benchmark::DoNotOptimize(picard_enumerate(R, 2).size());
}
BENCHMARK(Picard)->Unit(benchmark::kMillisecond);

static void EquivSelf(benchmark::State& state) {
  auto R = make_quotient_algebra(Field::make(2), {0, 0, 1});
  auto S = thm32_structure({Field::make(2), 1, 0, 0, true});
  auto P = picard_enumerate(R, 2);
  for (auto _ : state) benchmark::DoNotOptimize(equiv_test(S, S, P).has_value());
}
BENCHMARK(EquivSelf)->Unit(benchmark::kMillisecond);

static void ClassifyFastpath(benchmark::State& state) {
  auto R = make_quotient_algebra(Field::make(2), {0, 0, 1});
  ClassificationConfig cfg;
  cfg.audit = false;
  for (auto _ : state) benchmark::DoNotOptimize(classify_fastpath_char2(R, cfg).classes.size());
}
BENCHMARK(ClassifyFastpath)->Unit(benchmark::kMillisecond);

static void ClassifyGeneric(benchmark::State& state) {
  auto R = make_quotient_algebra(Field::make(2), {0, 0, 1});
  ClassificationConfig cfg;
  cfg.audit = false;
  cfg.shards = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(classify(R, cfg).classes.size());
}
BENCHMARK(ClassifyGeneric)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
