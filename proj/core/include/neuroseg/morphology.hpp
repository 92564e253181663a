#pragma once

#include <vector>

#include "neuroseg/raster.hpp"

namespace neuroseg {

struct Offset {
  int dx = 0;
  int dy = 0;
  bool operator==(const Offset&) const = default;
};

/// Digital disk: all offsets with dx^2 + dy^2 <= radius * (radius + 1), i.e.
/// strictly inside a circle of radius + 1/2. Radius 1 is the 3x3 square.
class StructuringElement {
 public:
  /// Throws InvalidArgument when radius < 1.
  static StructuringElement disk(int radius);

  [[nodiscard]] int radius() const noexcept { return radius_; }
  [[nodiscard]] const std::vector<Offset>& offsets() const noexcept { return offsets_; }

 private:
  StructuringElement(int radius, std::vector<Offset> offsets) : radius_(radius), offsets_(std::move(offsets)) {}

  int radius_;
  std::vector<Offset> offsets_;
};

// Pixels outside the raster count as false for dilation and as true for
// erosion. The pair is then an adjunction on the raster window, so closing
// stays extensive and idempotent right up to the edges.
BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se);
BinaryMask erode(const BinaryMask& mask, const StructuringElement& se);

/// Dilation followed by erosion. Requires a Border mask.
BinaryMask close(const BinaryMask& mask, const StructuringElement& se);

/// Zhang-Suen thinning run to a fixpoint. Requires a Border mask.
BinaryMask skeletonize(const BinaryMask& mask);

}  // namespace neuroseg
