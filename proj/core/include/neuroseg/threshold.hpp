#pragma once

#include <array>
#include <cstdint>

#include "neuroseg/raster.hpp"

namespace neuroseg {

/// Border mask, true exactly where intensity < t. Membranes are dark in SEM
/// sections, so the dark side is the Border class.
BinaryMask threshold_fixed(const GrayImage& img, std::uint8_t t);

struct OtsuResult {
  BinaryMask mask;
  std::uint8_t threshold;
};

/// Picks the t maximizing between-class variance of the partition
/// {v < t} | {v >= t} over the 256-bin histogram. The smallest maximizing t
/// is reported. Throws DegenerateHistogram when only one intensity occurs.
OtsuResult threshold_otsu(const GrayImage& img);

/// Same selection, from a precomputed histogram.
std::uint8_t otsu_threshold(const std::array<std::uint64_t, 256>& histogram);

/// ITU-R BT.601 luma, rounded to nearest.
GrayImage to_luma(const RgbImage& img);

}  // namespace neuroseg
