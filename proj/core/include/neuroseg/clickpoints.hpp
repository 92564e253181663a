#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "neuroseg/raster.hpp"

namespace neuroseg {

/// A single-pixel annotation at a neuron's center.
struct ClickPoint {
  int x = 0;
  int y = 0;
  std::uint32_t id = 0;
  bool operator==(const ClickPoint&) const = default;
};

/// Click-points of one slice, kept sorted by id with unique ids and unique
/// coordinates.
class ClickPointSet {
 public:
  ClickPointSet() = default;

  /// Validates and canonicalizes. Throws SchemaViolation (id 0 or negative
  /// coordinates), DuplicateId or DuplicateCoordinate.
  explicit ClickPointSet(std::vector<ClickPoint> points, std::string slice_name = {});

  [[nodiscard]] const std::vector<ClickPoint>& points() const noexcept { return points_; }
  [[nodiscard]] const std::string& slice_name() const noexcept { return slice_name_; }
  void set_slice_name(std::string name) { slice_name_ = std::move(name); }
  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
  [[nodiscard]] bool empty() const noexcept { return points_.empty(); }

  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  /// Throws OutOfBounds unless every point lies inside width x height.
  void check_bounds(int width, int height) const;

  bool operator==(const ClickPointSet&) const = default;

 private:
  std::vector<ClickPoint> points_;
  std::string slice_name_;
};

/// Accepts the JSON array form `[{"x":..,"y":..,"id":..}]`, the object form
/// `{"slice": name, "points": [...]}`, or CSV with an `id,x,y` header.
ClickPointSet parse_clickpoints(std::string_view text);
ClickPointSet parse_clickpoints(const std::filesystem::path& path);

/// Canonical JSON object form; parse_clickpoints inverts it.
std::string serialize_clickpoints(const ClickPointSet& set);
void save_clickpoints(const ClickPointSet& set, const std::filesystem::path& path);

struct RedMarker {
  int r_min = 200;
  int g_max = 80;
  int b_max = 80;

  [[nodiscard]] bool matches(const Rgb& px) const noexcept {
    return px.r >= r_min && px.g <= g_max && px.b <= b_max;
  }
};

/// One point per 8-connected blob of red marker pixels, placed at the blob's
/// rounded centroid. Ids are 1..n in the raster order in which each blob's
/// first pixel is met.
ClickPointSet extract_from_overlay(const RgbImage& overlay, const GrayImage& base, RedMarker marker = {});

/// Neuron mask that is true at exactly the click-point pixels.
BinaryMask rasterize_points(const ClickPointSet& set, int width, int height);

}  // namespace neuroseg
