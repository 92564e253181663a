#include "neuroseg/floodfill.hpp"

#include <cmath>

#include "json.hpp"
#include "neuroseg/threshold.hpp"

namespace neuroseg {

std::string fill_report_json(const FillResult& result) {
  return nlohmann::json{{"leaked", result.leaked_ids}, {"missed", result.missed_ids}}.dump() + "\n";
}

FillResult flood_fill(const BinaryMask& borders, const ClickPointSet& seeds, Connectivity connectivity,
                      double leak_fraction) {
  if (borders.positive_class() != PositiveClass::Border) {
    throw Error(ErrorCode::ClassMismatch, "flood_fill expects a Border mask");
  }
  if (!(leak_fraction > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "leak_fraction must be > 0");
  }
  seeds.check_bounds(borders.width(), borders.height());

  const int w = borders.width();
  const int h = borders.height();
  const double cap = leak_fraction * static_cast<double>(borders.size());
  static constexpr int kDx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
  static constexpr int kDy[8] = {0, 0, 1, -1, 1, -1, 1, -1};
  const int neighbours = connectivity == Connectivity::Eight ? 8 : 4;

  FillResult result{LabelImage(w, h, 0), {}, {}};
  LabelImage& labels = result.labels;
  std::vector<std::size_t> region;
  std::size_t head = 0;

  for (const ClickPoint& seed : seeds) {
    const std::size_t s = labels.index(seed.x, seed.y);
    if (borders.get(s) || labels[s] != 0) {
      result.missed_ids.push_back(seed.id);
      continue;
    }
    region.clear();
    head = 0;
    labels[s] = seed.id;
    region.push_back(s);
    bool leaked = false;
    while (head < region.size()) {
      const std::size_t i = region[head++];
      const int x = static_cast<int>(i % static_cast<std::size_t>(w));
      const int y = static_cast<int>(i / static_cast<std::size_t>(w));
      for (int k = 0; k < neighbours; ++k) {
        const int nx = x + kDx[k];
        const int ny = y + kDy[k];
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        const std::size_t j = labels.index(nx, ny);
        if (borders.get(j) || labels[j] != 0) continue;
        labels[j] = seed.id;
        region.push_back(j);
      }
      if (static_cast<double>(region.size()) > cap) {
        leaked = true;
        break;
      }
    }
    if (leaked) {
      for (const std::size_t i : region) labels[i] = 0;
      result.leaked_ids.push_back(seed.id);
    }
  }
  return result;
}

FillResult grow_floodfill(const GrayImage& img, const ClickPointSet& seeds, const FloodFillParams& params,
                          FloodFillStages* stages) {
  seeds.check_bounds(img.width(), img.height());
  const auto se = StructuringElement::disk(params.se_radius);

  std::uint8_t t = 0;
  std::optional<BinaryMask> binary;
  if (params.threshold) {
    t = *params.threshold;
    binary = threshold_fixed(img, t);
  } else {
    auto otsu = threshold_otsu(img);
    t = otsu.threshold;
    binary = std::move(otsu.mask);
  }
  BinaryMask skeleton = skeletonize(*binary);
  BinaryMask closed = close(skeleton, se);
  FillResult result = flood_fill(closed, seeds, params.connectivity, params.leak_fraction);
  if (stages != nullptr) {
    stages->threshold = t;
    stages->binary = std::move(binary);
    stages->skeleton = std::move(skeleton);
    stages->closed = std::move(closed);
  }
  return result;
}

}  // namespace neuroseg
