#pragma once

#include <optional>

#include "neuroseg/clickpoints.hpp"
#include "neuroseg/fill_result.hpp"
#include "neuroseg/morphology.hpp"

namespace neuroseg {

/// Fills each seed, in id order, over non-border pixels not yet claimed by an
/// earlier seed.
///
/// - a seed on a border pixel, or on a pixel an earlier fill already claimed,
///   goes to `missed_ids`;
/// - a fill larger than `leak_fraction * width * height` pixels is rolled back
///   and its id goes to `leaked_ids`.
///
/// Throws OutOfBounds for seeds outside the raster and ClassMismatch when
/// `borders` is not a Border mask.
FillResult flood_fill(const BinaryMask& borders, const ClickPointSet& seeds, Connectivity connectivity,
                      double leak_fraction);

struct FloodFillParams {
  /// Fixed binarization threshold; Otsu when empty.
  std::optional<std::uint8_t> threshold;
  int se_radius = 2;
  Connectivity connectivity = Connectivity::Four;
  double leak_fraction = 0.25;
};

/// Intermediate rasters of one pipeline run, kept for inspection.
struct FloodFillStages {
  std::uint8_t threshold = 0;
  std::optional<BinaryMask> binary;
  std::optional<BinaryMask> skeleton;
  std::optional<BinaryMask> closed;
};

/// threshold -> skeletonize -> close -> flood_fill.
FillResult grow_floodfill(const GrayImage& img, const ClickPointSet& seeds, const FloodFillParams& params,
                          FloodFillStages* stages = nullptr);

}  // namespace neuroseg
