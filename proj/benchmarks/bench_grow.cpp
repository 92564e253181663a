#include <benchmark/benchmark.h>

#include "neuroseg/floodfill.hpp"
#include "neuroseg/morphology.hpp"
#include "neuroseg/regiongrow.hpp"
#include "neuroseg/threshold.hpp"
#include "support/synthetic.hpp"

using namespace neuroseg;

namespace {

testing::CellGrid slice(int size) { return testing::cell_grid(size, size, 40, 3, 1, 20); }

void BM_GrowRegionSingle(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const GrayImage img(size, size, 120);
  RegionGrowParams p;
  p.max_region = img.size();
  for (auto _ : state) {
    benchmark::DoNotOptimize(grow_region(img, {size / 2, size / 2, 1}, p));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * size * size);
}
BENCHMARK(BM_GrowRegionSingle)->Arg(64)->Arg(256)->Arg(512);

void BM_GrowAll(benchmark::State& state) {
  const auto grid = slice(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(grow_all(grid.image, grid.seeds, RegionGrowParams{}));
  }
}
BENCHMARK(BM_GrowAll)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_FloodFillPipeline(benchmark::State& state) {
  const auto grid = slice(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(grow_floodfill(grid.image, grid.seeds, FloodFillParams{}));
  }
}
BENCHMARK(BM_FloodFillPipeline)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_Close(benchmark::State& state) {
  const auto grid = slice(1024);
  const BinaryMask borders = threshold_fixed(grid.image, 128);
  const auto se = StructuringElement::disk(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(close(borders, se));
  }
}
BENCHMARK(BM_Close)->Arg(1)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Skeletonize(benchmark::State& state) {
  const auto grid = testing::cell_grid(1024, 1024, 40, static_cast<int>(state.range(0)), 1, 0);
  const BinaryMask borders = threshold_fixed(grid.image, 128);
  for (auto _ : state) {
    benchmark::DoNotOptimize(skeletonize(borders));
  }
}
BENCHMARK(BM_Skeletonize)->Arg(3)->Arg(9)->Unit(benchmark::kMillisecond);

}  // namespace
