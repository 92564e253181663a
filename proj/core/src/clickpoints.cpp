#include "neuroseg/clickpoints.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace neuroseg {
namespace {

using nlohmann::json;

ClickPoint point_from_json(const json& j) {
  if (!j.is_object()) {
    throw Error(ErrorCode::SchemaViolation, "click-point entry must be an object");
  }
  for (const char* key : {"x", "y", "id"}) {
    if (!j.contains(key) || !j.at(key).is_number_integer()) {
      throw Error(ErrorCode::SchemaViolation, std::string("click-point field '") + key + "' missing or not an integer");
    }
  }
  const auto x = j.at("x").get<std::int64_t>();
  const auto y = j.at("y").get<std::int64_t>();
  const auto id = j.at("id").get<std::int64_t>();
  if (x < 0 || y < 0 || x > INT32_MAX || y > INT32_MAX) {
    throw Error(ErrorCode::SchemaViolation, "click-point coordinates must be non-negative");
  }
  if (id < 1 || id > UINT32_MAX) {
    throw Error(ErrorCode::SchemaViolation, "click-point id must be a positive integer");
  }
  return {static_cast<int>(x), static_cast<int>(y), static_cast<std::uint32_t>(id)};
}

ClickPointSet parse_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaViolation, std::string("invalid JSON: ") + e.what());
  }
  std::string slice;
  const json* arr = &doc;
  if (doc.is_object()) {
    if (!doc.contains("points") || !doc.at("points").is_array()) {
      throw Error(ErrorCode::SchemaViolation, "object form requires a 'points' array");
    }
    if (doc.contains("slice")) {
      if (!doc.at("slice").is_string()) {
        throw Error(ErrorCode::SchemaViolation, "'slice' must be a string");
      }
      slice = doc.at("slice").get<std::string>();
    }
    arr = &doc.at("points");
  } else if (!doc.is_array()) {
    throw Error(ErrorCode::SchemaViolation, "top level must be an array or an object");
  }
  std::vector<ClickPoint> points;
  points.reserve(arr->size());
  for (const auto& entry : *arr) {
    points.push_back(point_from_json(entry));
  }
  return ClickPointSet(std::move(points), std::move(slice));
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cells.push_back(trim(cell));
  }
  return cells;
}

std::int64_t csv_int(const std::string& cell, std::size_t line_no) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(cell, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (cell.empty() || used != cell.size()) {
    throw Error(ErrorCode::SchemaViolation, "line " + std::to_string(line_no) + ": '" + cell + "' is not an integer");
  }
  return v;
}

ClickPointSet parse_csv(std::string_view text) {
  std::stringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<ClickPoint> points;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (!header_seen) {
      if (cells != std::vector<std::string>{"id", "x", "y"}) {
        throw Error(ErrorCode::SchemaViolation, "CSV click-points need an 'id,x,y' header");
      }
      header_seen = true;
      continue;
    }
    if (cells.size() != 3) {
      throw Error(ErrorCode::SchemaViolation, "line " + std::to_string(line_no) + ": expected 3 columns");
    }
    json j{{"id", csv_int(cells[0], line_no)}, {"x", csv_int(cells[1], line_no)}, {"y", csv_int(cells[2], line_no)}};
    points.push_back(point_from_json(j));
  }
  if (!header_seen) {
    throw Error(ErrorCode::SchemaViolation, "empty click-point file");
  }
  return ClickPointSet(std::move(points));
}

}  // namespace

ClickPointSet::ClickPointSet(std::vector<ClickPoint> points, std::string slice_name)
    : points_(std::move(points)), slice_name_(std::move(slice_name)) {
  std::sort(points_.begin(), points_.end(), [](const ClickPoint& a, const ClickPoint& b) { return a.id < b.id; });
  std::set<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const ClickPoint& p = points_[i];
    if (p.id == 0) {
      throw Error(ErrorCode::SchemaViolation, "click-point id must be positive");
    }
    if (p.x < 0 || p.y < 0) {
      throw Error(ErrorCode::SchemaViolation, "click-point coordinates must be non-negative");
    }
    if (i > 0 && points_[i - 1].id == p.id) {
      throw Error(ErrorCode::DuplicateId, "id " + std::to_string(p.id) + " appears twice");
    }
    if (!seen.emplace(p.x, p.y).second) {
      throw Error(ErrorCode::DuplicateCoordinate,
                  "two ids at (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")");
    }
  }
}

void ClickPointSet::check_bounds(int width, int height) const {
  for (const ClickPoint& p : points_) {
    if (p.x >= width || p.y >= height) {
      throw Error(ErrorCode::OutOfBounds, "click-point " + std::to_string(p.id) + " at (" + std::to_string(p.x) +
                                              ", " + std::to_string(p.y) + ") outside " + std::to_string(width) +
                                              "x" + std::to_string(height));
    }
  }
}

ClickPointSet parse_clickpoints(std::string_view text) {
  const auto first = std::find_if(text.begin(), text.end(), [](unsigned char c) { return !std::isspace(c); });
  if (first != text.end() && (*first == '[' || *first == '{')) {
    return parse_json(text);
  }
  return parse_csv(text);
}

ClickPointSet parse_clickpoints(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorCode::MissingFile, path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  }
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  ClickPointSet set = parse_clickpoints(std::string_view(text));
  if (set.slice_name().empty()) {
    set.set_slice_name(path.stem().string());
  }
  return set;
}

std::string serialize_clickpoints(const ClickPointSet& set) {
  json points = json::array();
  for (const ClickPoint& p : set) {
    points.push_back({{"x", p.x}, {"y", p.y}, {"id", p.id}});
  }
  return json{{"slice", set.slice_name()}, {"points", std::move(points)}}.dump(2) + "\n";
}

void save_clickpoints(const ClickPointSet& set, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  }
  out << serialize_clickpoints(set);
  if (!out) {
    throw Error(ErrorCode::IoFailure, "short write to " + path.string());
  }
}

ClickPointSet extract_from_overlay(const RgbImage& overlay, const GrayImage& base, RedMarker marker) {
  if (overlay.width() != base.width() || overlay.height() != base.height()) {
    throw Error(ErrorCode::DimensionMismatch, "overlay and base image differ in size");
  }
  const int w = overlay.width();
  const int h = overlay.height();
  std::vector<std::uint8_t> visited(overlay.size(), 0);
  std::vector<ClickPoint> points;
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = overlay.index(x, y);
      if (visited[i] || !marker.matches(overlay[i])) continue;
      std::uint64_t n = 0;
      std::uint64_t sx = 0;
      std::uint64_t sy = 0;
      visited[i] = 1;
      stack.assign(1, {x, y});
      while (!stack.empty()) {
        const auto [cx, cy] = stack.back();
        stack.pop_back();
        ++n;
        sx += static_cast<std::uint64_t>(cx);
        sy += static_cast<std::uint64_t>(cy);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = cx + dx;
            const int ny = cy + dy;
            if (!overlay.contains(nx, ny)) continue;
            const std::size_t j = overlay.index(nx, ny);
            if (visited[j] || !marker.matches(overlay[j])) continue;
            visited[j] = 1;
            stack.emplace_back(nx, ny);
          }
        }
      }
      // round half up
      const int px = static_cast<int>((2 * sx + n) / (2 * n));
      const int py = static_cast<int>((2 * sy + n) / (2 * n));
      points.push_back({px, py, static_cast<std::uint32_t>(points.size() + 1)});
    }
  }
  return ClickPointSet(std::move(points));
}

BinaryMask rasterize_points(const ClickPointSet& set, int width, int height) {
  set.check_bounds(width, height);
  BinaryMask mask(width, height, PositiveClass::Neuron);
  for (const ClickPoint& p : set) {
    mask.set(p.x, p.y, true);
  }
  return mask;
}

}  // namespace neuroseg
