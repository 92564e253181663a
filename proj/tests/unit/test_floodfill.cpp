#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "neuroseg/floodfill.hpp"
#include "oracles/fill_oracle.hpp"
#include "support/synthetic.hpp"

using namespace neuroseg;

namespace {

BinaryMask square_border(int size, int x0, int y0, int side) {
  BinaryMask m(size, size, PositiveClass::Border);
  for (int i = 0; i < side; ++i) {
    m.set(x0 + i, y0, true);
    m.set(x0 + i, y0 + side - 1, true);
    m.set(x0, y0 + i, true);
    m.set(x0 + side - 1, y0 + i, true);
  }
  return m;
}

std::set<std::pair<int, int>> label_pixels(const LabelImage& labels, std::uint32_t id) {
  std::set<std::pair<int, int>> out;
  for (int y = 0; y < labels.height(); ++y)
    for (int x = 0; x < labels.width(); ++x)
      if (labels(x, y) == id) out.insert({x, y});
  return out;
}

// Dark 1-px outline of an axis-aligned rectangle on a light background.
void draw_rect(GrayImage& img, int x0, int y0, int x1, int y1, std::uint8_t v) {
  for (int x = x0; x <= x1; ++x) img(x, y0) = img(x, y1) = v;
  for (int y = y0; y <= y1; ++y) img(x0, y) = img(x1, y) = v;
}

void check_fill_invariants(const BinaryMask& borders, const ClickPointSet& seeds, const FillResult& r, bool eight) {
  std::set<std::uint32_t> accounted;
  for (auto id : r.leaked_ids) CHECK(accounted.insert(id).second);
  for (auto id : r.missed_ids) CHECK(accounted.insert(id).second);
  const auto grid = oracle::to_grid(borders);
  for (const ClickPoint& s : seeds) {
    const auto px = label_pixels(r.labels, s.id);
    if (px.empty()) {
      CHECK(accounted.contains(s.id));
      continue;
    }
    CHECK_FALSE(accounted.contains(s.id));
    CHECK(px.contains({s.x, s.y}));
    for (auto [x, y] : px) CHECK_FALSE(borders.get(x, y));
    // connected: everything labeled `id` is reachable from the seed without
    // crossing borders or other labels
    oracle::Grid walls = grid;
    for (int y = 0; y < r.labels.height(); ++y)
      for (int x = 0; x < r.labels.width(); ++x)
        if (r.labels(x, y) != s.id) walls[y][x] = 1;
    CHECK(oracle::reachable(walls, s.x, s.y, eight) == px);
  }
}

}  // namespace

TEST_CASE("closed 5x5 square: the 3x3 interior is filled") {
  const BinaryMask borders = square_border(7, 1, 1, 5);
  const FillResult r = flood_fill(borders, ClickPointSet({{3, 3, 1}}), Connectivity::Four, 0.25);
  CHECK(r.leaked_ids.empty());
  CHECK(r.missed_ids.empty());
  std::set<std::pair<int, int>> interior;
  for (int y = 2; y <= 4; ++y)
    for (int x = 2; x <= 4; ++x) interior.insert({x, y});
  CHECK(label_pixels(r.labels, 1) == interior);
}

TEST_CASE("a one-pixel gap leaks past the cap and is rolled back") {
  BinaryMask borders = square_border(7, 1, 1, 5);
  borders.set(3, 1, false);
  // reachable non-border pixels from the centre: all 49 minus the 15 remaining border pixels
  const auto reach = oracle::reachable(oracle::to_grid(borders), 3, 3, false);
  CHECK(reach.size() == 34);
  CHECK(static_cast<double>(reach.size()) > 0.5 * 49);
  const FillResult r = flood_fill(borders, ClickPointSet({{3, 3, 1}}), Connectivity::Four, 0.5);
  CHECK(r.leaked_ids == std::vector<std::uint32_t>{1});
  CHECK(label_pixels(r.labels, 1).empty());
}

TEST_CASE("a seed on a border pixel is missed") {
  const BinaryMask borders = square_border(7, 1, 1, 5);
  const FillResult r = flood_fill(borders, ClickPointSet({{1, 1, 4}, {3, 3, 5}}), Connectivity::Four, 0.25);
  CHECK(r.missed_ids == std::vector<std::uint32_t>{4});
  CHECK(label_pixels(r.labels, 4).empty());
  CHECK(label_pixels(r.labels, 5).size() == 9);
}

TEST_CASE("a seed inside a region claimed by a lower id is missed") {
  const BinaryMask borders = square_border(7, 1, 1, 5);
  const FillResult r = flood_fill(borders, ClickPointSet({{2, 2, 1}, {4, 4, 2}}), Connectivity::Four, 0.25);
  CHECK(label_pixels(r.labels, 1).size() == 9);
  CHECK(r.missed_ids == std::vector<std::uint32_t>{2});
}

TEST_CASE("diagonal border holds a 4-fill but not an 8-fill") {
  BinaryMask diamond(9, 9, PositiveClass::Border);
  for (int i = 0; i <= 4; ++i) {
    diamond.set(4 + i, i, true);
    diamond.set(4 - i, i, true);
    diamond.set(4 + i, 8 - i, true);
    diamond.set(4 - i, 8 - i, true);
  }
  const ClickPointSet seed({{4, 4, 1}});
  const FillResult four = flood_fill(diamond, seed, Connectivity::Four, 0.9);
  const FillResult eight = flood_fill(diamond, seed, Connectivity::Eight, 0.9);
  const auto inner = label_pixels(four.labels, 1);
  CHECK(inner.size() == oracle::reachable(oracle::to_grid(diamond), 4, 4, false).size());
  CHECK(label_pixels(eight.labels, 1).size() > inner.size());
}

TEST_CASE("flood_fill preconditions") {
  const BinaryMask borders = square_border(7, 1, 1, 5);
  CHECK_THROWS_AS(flood_fill(borders, ClickPointSet({{7, 0, 1}}), Connectivity::Four, 0.25), Error);
  CHECK_THROWS_AS(flood_fill(BinaryMask(7, 7, PositiveClass::Neuron), ClickPointSet(), Connectivity::Four, 0.25), Error);
  CHECK_THROWS_AS(flood_fill(borders, ClickPointSet(), Connectivity::Four, 0.0), Error);
}

TEST_CASE("random border fixtures satisfy the fill invariants") {
  std::mt19937 rng(808);
  for (int k = 0; k < 60; ++k) {
    const int w = 8 + k % 20, h = 6 + (k * 7) % 23;
    const BinaryMask borders = neuroseg::testing::random_mask(w, h, 0.35, rng);
    std::vector<ClickPoint> pts;
    std::set<std::pair<int, int>> used;
    std::uniform_int_distribution<int> cx(0, w - 1), cy(0, h - 1);
    for (std::uint32_t id = 1; id <= 6; ++id) {
      const int x = cx(rng), y = cy(rng);
      if (used.insert({x, y}).second) pts.push_back({x, y, id * 3});
    }
    const ClickPointSet seeds(pts);
    const bool eight = k % 2 == 1;
    const FillResult r = flood_fill(borders, seeds, eight ? Connectivity::Eight : Connectivity::Four, 0.3);
    check_fill_invariants(borders, seeds, r, eight);
    const FillResult again = flood_fill(borders, seeds, eight ? Connectivity::Eight : Connectivity::Four, 0.3);
    CHECK(again.labels == r.labels);
    CHECK(again.leaked_ids == r.leaked_ids);
    CHECK(again.missed_ids == r.missed_ids);
  }
}

TEST_CASE("pipeline on three thick-membrane cells fills each interior") {
  // three 14x14 cells in a row, 3-px membranes, mild noise
  auto grid = neuroseg::testing::cell_grid(54, 20, 14, 3, 5, 8);
  REQUIRE(grid.seeds.size() == 3);
  FloodFillStages stages;
  FloodFillParams params;
  params.leak_fraction = 0.3;
  const FillResult r = grow_floodfill(grid.image, grid.seeds, params, &stages);
  CHECK(r.leaked_ids.empty());
  CHECK(r.missed_ids.empty());
  REQUIRE(stages.closed);
  CHECK(stages.skeleton->subset_of(*stages.binary));
  CHECK(stages.skeleton->subset_of(*stages.closed));
  const auto walls = oracle::to_grid(*stages.closed);
  for (const ClickPoint& s : grid.seeds) {
    const auto px = label_pixels(r.labels, s.id);
    CHECK(px == oracle::reachable(walls, s.x, s.y, false));
    CHECK(px.size() >= 14u * 14u);  // skeleton sits mid-membrane, so the fill covers the full interior
  }
  check_fill_invariants(*stages.closed, grid.seeds, r, false);
}

TEST_CASE("radius too small for a 3-px gap leaks; a 1-px gap closes") {
  GrayImage img(40, 40, 200);
  draw_rect(img, 10, 10, 29, 29, 30);
  const ClickPointSet seed({{20, 20, 1}});
  FloodFillParams params;
  params.se_radius = 1;

  SUBCASE("1-px gap") {
    img(20, 10) = 200;
    FloodFillStages stages;
    const FillResult r = grow_floodfill(img, seed, params, &stages);
    CHECK(r.leaked_ids.empty());
    const auto px = label_pixels(r.labels, 1);
    CHECK(px == oracle::reachable(oracle::to_grid(*stages.closed), 20, 20, false));
    CHECK(px.size() < 18u * 18u + 1);
  }
  SUBCASE("3-px gap") {
    for (int x = 19; x <= 21; ++x) img(x, 10) = 200;
    const FillResult r = grow_floodfill(img, seed, params);
    CHECK(r.leaked_ids == std::vector<std::uint32_t>{1});
    CHECK(label_pixels(r.labels, 1).empty());
  }
}

TEST_CASE("radius too large seals a small neuron so its seed is missed") {
  GrayImage img(40, 40, 200);
  draw_rect(img, 10, 10, 14, 14, 30);  // 3x3 interior at 11..13
  draw_rect(img, 20, 20, 35, 35, 30);  // a larger neighbour that survives
  const ClickPointSet seeds({{12, 12, 1}, {27, 27, 2}});
  FloodFillParams params;
  params.threshold = 128;

  params.se_radius = 1;
  const FillResult small = grow_floodfill(img, seeds, params);
  CHECK(small.missed_ids.empty());
  CHECK(label_pixels(small.labels, 1).size() == 9);

  params.se_radius = 4;
  const FillResult large = grow_floodfill(img, seeds, params);
  CHECK(large.missed_ids == std::vector<std::uint32_t>{1});
  CHECK_FALSE(label_pixels(large.labels, 2).empty());
}

TEST_CASE("grow_floodfill is deterministic") {
  auto grid = neuroseg::testing::cell_grid(96, 96, 20, 3, 42, 25);
  const FillResult a = grow_floodfill(grid.image, grid.seeds, FloodFillParams{});
  const FillResult b = grow_floodfill(grid.image, grid.seeds, FloodFillParams{});
  CHECK(a.labels == b.labels);
  CHECK(a.leaked_ids == b.leaked_ids);
  CHECK(a.missed_ids == b.missed_ids);
}

TEST_CASE("fill report JSON") {
  FillResult r{LabelImage(1, 1), {3, 5}, {}};
  CHECK(fill_report_json(r) == "{\"leaked\":[3,5],\"missed\":[]}\n");
}
