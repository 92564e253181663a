#include "neuroseg/regiongrow.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <queue>

namespace neuroseg {
namespace {

using MinHeap = std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>>;

// Frontier pixels bucketed by intensity. Within a bucket the smallest
// row-major index wins, which is the tie-break rule; across buckets the
// distance |v * n - sum| to the region mean is compared in exact integers.
class Grower {
 public:
  explicit Grower(const GrayImage& img) : img_(img), stamp_(img.size(), 0) {}

  RegionResult grow(const ClickPoint& seed, const RegionGrowParams& params, std::size_t cap,
                    const std::vector<std::uint8_t>* blocked, const GrowObserver& observer) {
    reset();
    const int w = img_.width();
    const int h = img_.height();
    const int neighbours = params.connectivity == Connectivity::Eight ? 8 : 4;
    static constexpr int kDx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
    static constexpr int kDy[8] = {0, 0, 1, -1, 1, -1, 1, -1};

    RegionResult result;
    auto join = [&](std::size_t i) {
      result.pixels.push_back(i);
      result.intensity_sum += img_[i];
      if (observer) {
        observer({i, result.pixels.size(), result.intensity_sum, result.mean()});
      }
      const int x = static_cast<int>(i % static_cast<std::size_t>(w));
      const int y = static_cast<int>(i / static_cast<std::size_t>(w));
      for (int k = 0; k < neighbours; ++k) {
        const int nx = x + kDx[k];
        const int ny = y + kDy[k];
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        const std::size_t j = img_.index(nx, ny);
        if (stamp_[j] == run_ || (blocked != nullptr && (*blocked)[j] != 0)) continue;
        stamp_[j] = run_;
        push(j);
      }
    };

    const std::size_t s = img_.index(seed.x, seed.y);
    stamp_[s] = run_;
    join(s);
    for (;;) {
      if (frontier_size_ == 0) {
        result.stop = StopReason::FrontierEmpty;
        break;
      }
      const auto n = static_cast<std::int64_t>(result.pixels.size());
      const auto sum = static_cast<std::int64_t>(result.intensity_sum);
      const auto [bucket, distance] = closest_bucket(n, sum);
      if (static_cast<double>(distance) > params.threshold * static_cast<double>(n)) {
        result.stop = StopReason::Threshold;
        break;
      }
      if (result.pixels.size() >= cap) {
        result.stop = StopReason::MaxRegion;
        break;
      }
      const std::size_t next = buckets_[bucket].top();
      buckets_[bucket].pop();
      --frontier_size_;
      join(next);
    }
    return result;
  }

 private:
  void reset() {
    for (auto& b : buckets_) {
      b = MinHeap();
    }
    frontier_size_ = 0;
    if (++run_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      run_ = 1;
    }
  }

  void push(std::size_t i) {
    buckets_[img_[i]].push(i);
    ++frontier_size_;
  }

  // Nearest non-empty bucket to the mean sum / n; equal distances resolve to
  // the bucket whose smallest pixel index is lower.
  std::pair<int, std::int64_t> closest_bucket(std::int64_t n, std::int64_t sum) const {
    const int centre = static_cast<int>(sum / n);
    int lo = centre;
    int hi = centre + 1;
    while (lo >= 0 && buckets_[lo].empty()) --lo;
    while (hi < 256 && buckets_[hi].empty()) ++hi;
    const auto dist = [&](int v) { return std::abs(static_cast<std::int64_t>(v) * n - sum); };
    if (hi >= 256) return {lo, dist(lo)};
    if (lo < 0) return {hi, dist(hi)};
    const std::int64_t dl = dist(lo);
    const std::int64_t dh = dist(hi);
    if (dl != dh) return dl < dh ? std::pair{lo, dl} : std::pair{hi, dh};
    return buckets_[lo].top() < buckets_[hi].top() ? std::pair{lo, dl} : std::pair{hi, dh};
  }

  const GrayImage& img_;
  std::array<MinHeap, 256> buckets_;
  std::size_t frontier_size_ = 0;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t run_ = 0;
};

void validate(const RegionGrowParams& params) {
  if (!(params.threshold > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "region threshold must be > 0");
  }
  if (params.max_region && *params.max_region < 1) {
    throw Error(ErrorCode::InvalidArgument, "max_region must be >= 1");
  }
}

}  // namespace

std::size_t RegionGrowParams::region_cap(const GrayImage& img) const {
  if (max_region) return *max_region;
  return std::max<std::size_t>(1, img.size() / 4);
}

RegionResult grow_region(const GrayImage& img, const ClickPoint& seed, const RegionGrowParams& params,
                         const std::vector<std::uint8_t>* blocked, const GrowObserver& observer) {
  validate(params);
  if (!img.contains(seed.x, seed.y)) {
    throw Error(ErrorCode::OutOfBounds, "seed " + std::to_string(seed.id) + " outside the image");
  }
  if (blocked != nullptr && blocked->size() != img.size()) {
    throw Error(ErrorCode::DimensionMismatch, "blocked mask does not match the image");
  }
  Grower grower(img);
  return grower.grow(seed, params, params.region_cap(img), blocked, observer);
}

FillResult grow_all(const GrayImage& img, const ClickPointSet& seeds, const RegionGrowParams& params) {
  validate(params);
  seeds.check_bounds(img.width(), img.height());
  const std::size_t cap = params.region_cap(img);

  FillResult result{LabelImage(img.width(), img.height(), 0), {}, {}};
  std::vector<std::uint8_t> blocked(img.size(), 0);
  for (const ClickPoint& p : seeds) {
    blocked[img.index(p.x, p.y)] = 1;
  }
  Grower grower(img);
  for (const ClickPoint& seed : seeds) {
    const RegionResult region = grower.grow(seed, params, cap, &blocked, {});
    if (region.stop == StopReason::MaxRegion) {
      result.leaked_ids.push_back(seed.id);
      continue;
    }
    for (const std::size_t i : region.pixels) {
      result.labels[i] = seed.id;
      blocked[i] = 1;
    }
  }
  return result;
}

}  // namespace neuroseg
