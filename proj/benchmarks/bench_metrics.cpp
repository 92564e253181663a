#include <benchmark/benchmark.h>

#include <random>

#include "neuroseg/metrics.hpp"
#include "support/synthetic.hpp"

using namespace neuroseg;

namespace {

void BM_CountConfusion(benchmark::State& state) {
  std::mt19937 rng(5);
  const BinaryMask a = testing::random_mask(1024, 1024, 0.1, rng, PositiveClass::Neuron);
  const BinaryMask b = testing::random_mask(1024, 1024, 0.1, rng, PositiveClass::Neuron);
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_confusion(a, b));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 1024 * 1024);
}
BENCHMARK(BM_CountConfusion);

void BM_Evaluate(benchmark::State& state) {
  const ConfusionCounts c = ConfusionCounts::from_fractions(0.0310, 0.9329, 0.0351, 0.0011, kPublishedSumTolerance);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(c));
  }
}
BENCHMARK(BM_Evaluate);

}  // namespace
