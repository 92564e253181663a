#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "neuroseg/clickpoints.hpp"
#include "neuroseg/fill_result.hpp"

namespace neuroseg {

struct RegionGrowParams {
  /// Growth stops once the closest frontier pixel differs from the region
  /// mean by more than this many intensity levels. Must be > 0.
  double threshold = 30.0;
  Connectivity connectivity = Connectivity::Four;
  /// Region size cap in pixels; must be >= 1. Empty means a quarter of the
  /// image area.
  std::optional<std::size_t> max_region;

  [[nodiscard]] std::size_t region_cap(const GrayImage& img) const;
};

enum class StopReason {
  Threshold,      ///< closest frontier pixel is farther than the threshold
  FrontierEmpty,  ///< nothing left to absorb
  MaxRegion,      ///< cap reached while growth would have continued
};

struct RegionResult {
  /// Member pixel indices (row-major), in the order they joined.
  std::vector<std::size_t> pixels;
  StopReason stop = StopReason::FrontierEmpty;
  std::uint64_t intensity_sum = 0;

  [[nodiscard]] double mean() const {
    return static_cast<double>(intensity_sum) / static_cast<double>(pixels.size());
  }
};

/// Per-iteration view handed to an optional observer.
struct GrowStep {
  std::size_t pixel;
  std::size_t region_size;
  std::uint64_t intensity_sum;
  double mean;
};

using GrowObserver = std::function<void(const GrowStep&)>;

/// Seeded region growing: starting from the seed, repeatedly absorb the
/// frontier pixel closest in intensity to the current region mean (ties go to
/// the smallest row-major index) until that distance exceeds the threshold,
/// the frontier empties, or the cap is hit.
///
/// `blocked`, when given, marks pixels that may not join (the seed itself is
/// always a member). Throws OutOfBounds for a seed outside the image.
RegionResult grow_region(const GrayImage& img, const ClickPoint& seed, const RegionGrowParams& params,
                         const std::vector<std::uint8_t>* blocked = nullptr, const GrowObserver& observer = {});

/// Grows every seed in id order. Pixels claimed by earlier regions and the
/// seed pixels of all other click-points are off limits. Regions stopped by
/// the cap are rolled back and reported in `leaked_ids`.
FillResult grow_all(const GrayImage& img, const ClickPointSet& seeds, const RegionGrowParams& params);

}  // namespace neuroseg
