#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "neuroseg/clickpoints.hpp"
#include "neuroseg/raster.hpp"

namespace neuroseg {

/// The eight symmetries of the square. Rotations are clockwise in image
/// coordinates (y grows downward).
enum class Dihedral : std::uint8_t {
  Identity,
  Rot90,
  Rot180,
  Rot270,
  HFlip,
  VFlip,
  Transpose,
  AntiTranspose,
};

inline constexpr std::array<Dihedral, 8> kAllDihedral = {
    Dihedral::Identity, Dihedral::Rot90, Dihedral::Rot180,    Dihedral::Rot270,
    Dihedral::HFlip,    Dihedral::VFlip, Dihedral::Transpose, Dihedral::AntiTranspose,
};

std::string_view to_string(Dihedral d) noexcept;

/// True when the element exchanges width and height.
[[nodiscard]] constexpr bool swaps_axes(Dihedral d) noexcept {
  return d == Dihedral::Rot90 || d == Dihedral::Rot270 || d == Dihedral::Transpose ||
         d == Dihedral::AntiTranspose;
}

/// Dihedral element first, then a translation by (dx, dy) with reflect
/// padding (edge pixel repeated: ...cba|abc...|cba...).
struct TransformSpec {
  Dihedral dihedral = Dihedral::Identity;
  int dx = 0;
  int dy = 0;
  bool operator==(const TransformSpec&) const = default;
};

std::string describe(const TransformSpec& spec);

/// Where pixel (x, y) of a width x height raster lands under `d`.
struct PointXY {
  int x;
  int y;
  bool operator==(const PointXY&) const = default;
};
PointXY map_point(Dihedral d, PointXY p, int width, int height) noexcept;

/// Reflect-pad index mapping, valid for any integer i.
int reflect_index(int i, int n) noexcept;

template <typename T>
Raster<T> apply_transform(const Raster<T>& src, const TransformSpec& spec) {
  const int w = src.width();
  const int h = src.height();
  const bool swap = swaps_axes(spec.dihedral);
  Raster<T> rotated(swap ? h : w, swap ? w : h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const PointXY q = map_point(spec.dihedral, {x, y}, w, h);
      rotated(q.x, q.y) = src(x, y);
    }
  }
  if (spec.dx == 0 && spec.dy == 0) {
    return rotated;
  }
  Raster<T> out(rotated.width(), rotated.height());
  for (int y = 0; y < out.height(); ++y) {
    const int sy = reflect_index(y - spec.dy, out.height());
    for (int x = 0; x < out.width(); ++x) {
      out(x, y) = rotated(reflect_index(x - spec.dx, out.width()), sy);
    }
  }
  return out;
}

BinaryMask apply_transform(const BinaryMask& src, const TransformSpec& spec);

struct DroppedPoint {
  std::uint32_t id;
  int x;
  int y;
};

/// Maps click-points through `spec`. Points translated off the raster are
/// removed and reported in `dropped` when given.
ClickPointSet transform_points(const ClickPointSet& set, const TransformSpec& spec, int width, int height,
                               std::vector<DroppedPoint>* dropped = nullptr);

/// The 12-fold augmentation set: the 8 dihedral elements unshifted, then the
/// identity shifted by (+s,0), (-s,0), (0,+s), (0,-s). Element 0 is the
/// identity.
std::vector<TransformSpec> enumerate_transforms(int shift = 64);

struct ManifestRow {
  std::string source;
  std::size_t transform_index;
  std::string output;
  std::string points_output;  ///< empty unless points were transformed
  std::vector<DroppedPoint> dropped;
};

struct Manifest {
  std::vector<ManifestRow> rows;
  [[nodiscard]] std::string to_json() const;
};

struct AugmentOptions {
  int shift = 64;
  bool transform_points = false;
};

/// Writes 12 variants of every PGM/PNG image in `in_dir` to `out_dir` as
/// `<stem>__t<k>.<ext>`, plus `manifest.json`. With transform_points, a
/// `<stem>.json` or `<stem>.csv` click-point file next to an image is mapped
/// alongside it. Throws IoFailure or MismatchedPointFile (point file without
/// an image, or points outside their image).
Manifest augment_dataset(const std::filesystem::path& in_dir, const std::filesystem::path& out_dir,
                         const AugmentOptions& opts = {});

}  // namespace neuroseg
