#pragma once

// Reachability on a border grid: pixels reachable from a seed without
// stepping on a border pixel.

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "grid.hpp"

namespace neuroseg::oracle {

inline std::set<std::pair<int, int>> reachable(const Grid& borders, int sx, int sy, bool eight) {
  std::set<std::pair<int, int>> seen;
  if (borders[sy][sx]) return seen;
  std::vector<std::pair<int, int>> stack{{sx, sy}};
  seen.insert({sx, sy});
  while (!stack.empty()) {
    const auto [x, y] = stack.back();
    stack.pop_back();
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        if ((dx == 0 && dy == 0) || (!eight && dx != 0 && dy != 0)) continue;
        const int nx = x + dx, ny = y + dy;
        if (!inside(borders, nx, ny) || borders[ny][nx]) continue;
        if (seen.insert({nx, ny}).second) stack.emplace_back(nx, ny);
      }
  }
  return seen;
}

/// Components of `on` pixels under 8-connectivity, via union-find. Returned
/// in order of each component's first pixel in raster order.
inline std::vector<std::vector<std::pair<int, int>>> components8(const Grid& on) {
  const int h = static_cast<int>(on.size());
  const int w = static_cast<int>(on[0].size());
  std::vector<int> parent(static_cast<std::size_t>(w * h));
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (!on[y][x]) continue;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx, ny = y + dy;
          if (inside(on, nx, ny) && on[ny][nx]) {
            const int a = find(y * w + x), b = find(ny * w + nx);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
          }
        }
    }
  std::vector<int> root_order;
  std::vector<std::vector<std::pair<int, int>>> comps;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (!on[y][x]) continue;
      const int r = find(y * w + x);
      auto it = std::find(root_order.begin(), root_order.end(), r);
      if (it == root_order.end()) {
        root_order.push_back(r);
        comps.emplace_back();
        it = root_order.end() - 1;
      }
      comps[static_cast<std::size_t>(it - root_order.begin())].emplace_back(x, y);
    }
  return comps;
}

}  // namespace neuroseg::oracle
