#pragma once

#include <filesystem>

#include "neuroseg/raster.hpp"

namespace neuroseg {

struct LoadOptions {
  /// Convert RGB/RGBA input to gray with BT.601 luma weights. When false,
  /// multi-channel input is rejected with UnsupportedFormat.
  bool convert_to_luma = false;
};

/// Reads an 8-bit single-channel PGM (P5, maxval 255) or PNG. The format is
/// taken from the file contents, not the extension.
GrayImage load_image(const std::filesystem::path& path, LoadOptions opts = {});

/// Writes PGM when the extension is `.pgm`, PNG otherwise.
void save_image(const GrayImage& img, const std::filesystem::path& path);

/// Masks are written as 8-bit images, positive = 255, negative = 0.
void save_image(const BinaryMask& mask, const std::filesystem::path& path);

/// Reads a mask written by save_image (any pixel >= 128 is positive).
BinaryMask load_mask(const std::filesystem::path& path, PositiveClass positive);

/// Reads an RGB(A) PNG or binary PPM (P6). Gray input is expanded to RGB.
RgbImage load_rgb(const std::filesystem::path& path);

/// Writes PPM when the extension is `.ppm`, PNG otherwise.
void save_rgb(const RgbImage& img, const std::filesystem::path& path);

/// Label rasters go to 16-bit grayscale PNG; ids above 65535 are rejected.
void save_labels(const LabelImage& labels, const std::filesystem::path& path);
LabelImage load_labels(const std::filesystem::path& path);

}  // namespace neuroseg
