#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "neuroseg/error.hpp"

namespace neuroseg {

/// Dense row-major 2D grid. Width and height are always >= 1.
template <typename T>
class Raster {
 public:
  using value_type = T;

  Raster(int width, int height, T fill = T{}) : width_(width), height_(height) {
    if (width < 1 || height < 1) {
      throw Error(ErrorCode::InvalidArgument, "raster dimensions must be >= 1");
    }
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }

  Raster(int width, int height, std::vector<T> data) : width_(width), height_(height), data_(std::move(data)) {
    if (width < 1 || height < 1) {
      throw Error(ErrorCode::InvalidArgument, "raster dimensions must be >= 1");
    }
    if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
      throw Error(ErrorCode::InvalidArgument, "raster data length does not match width*height");
    }
  }

  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] int height() const noexcept { return height_; }
  [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }

  [[nodiscard]] bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  [[nodiscard]] std::size_t index(int x, int y) const noexcept {
    assert(contains(x, y));
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  T& operator()(int x, int y) noexcept { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const noexcept { return data_[index(x, y)]; }
  T& operator[](std::size_t i) noexcept { return data_[i]; }
  const T& operator[](std::size_t i) const noexcept { return data_[i]; }

  [[nodiscard]] std::span<T> data() noexcept { return data_; }
  [[nodiscard]] std::span<const T> data() const noexcept { return data_; }

  bool operator==(const Raster&) const = default;

 private:
  int width_;
  int height_;
  std::vector<T> data_;
};

/// 8-bit grayscale intensities.
using GrayImage = Raster<std::uint8_t>;

/// Neuron id per pixel, 0 = unlabeled.
using LabelImage = Raster<std::uint32_t>;

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  bool operator==(const Rgb&) const = default;
};

using RgbImage = Raster<Rgb>;

/// Which semantic class the `true` pixels of a mask stand for.
enum class PositiveClass { Neuron, Border };

/// Boolean raster tagged with the class its true pixels represent. The tag is
/// fixed at construction; operations producing a mask from a mask keep it.
class BinaryMask {
 public:
  BinaryMask(int width, int height, PositiveClass positive, bool fill = false)
      : bits_(width, height, fill ? 1 : 0), positive_(positive) {}
  BinaryMask(Raster<std::uint8_t> bits, PositiveClass positive);

  [[nodiscard]] int width() const noexcept { return bits_.width(); }
  [[nodiscard]] int height() const noexcept { return bits_.height(); }
  [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
  [[nodiscard]] PositiveClass positive_class() const noexcept { return positive_; }
  [[nodiscard]] bool contains(int x, int y) const noexcept { return bits_.contains(x, y); }
  [[nodiscard]] std::size_t index(int x, int y) const noexcept { return bits_.index(x, y); }

  [[nodiscard]] bool get(int x, int y) const noexcept { return bits_(x, y) != 0; }
  [[nodiscard]] bool get(std::size_t i) const noexcept { return bits_[i] != 0; }
  void set(int x, int y, bool v) noexcept { bits_(x, y) = v ? 1 : 0; }
  void set(std::size_t i, bool v) noexcept { bits_[i] = v ? 1 : 0; }

  [[nodiscard]] std::size_t count() const noexcept;

  /// Underlying 0/1 storage.
  [[nodiscard]] const Raster<std::uint8_t>& bits() const noexcept { return bits_; }
  [[nodiscard]] Raster<std::uint8_t>& bits() noexcept { return bits_; }

  /// True when every true pixel of this mask is also true in `other`.
  [[nodiscard]] bool subset_of(const BinaryMask& other) const;

  /// 0/255 grayscale rendering (positive = 255).
  [[nodiscard]] GrayImage to_gray() const;

  bool operator==(const BinaryMask&) const = default;

 private:
  Raster<std::uint8_t> bits_;
  PositiveClass positive_;
};

/// Mask from a grayscale rendering: true where intensity >= 128.
BinaryMask mask_from_gray(const GrayImage& img, PositiveClass positive);

/// Union of all non-zero labels as a Neuron mask.
BinaryMask label_union(const LabelImage& labels);

}  // namespace neuroseg
