#include "neuroseg/augment.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>

#include "json.hpp"
#include "neuroseg/image_io.hpp"

namespace neuroseg {

namespace fs = std::filesystem;

std::string_view to_string(Dihedral d) noexcept {
  switch (d) {
    case Dihedral::Identity: return "id";
    case Dihedral::Rot90: return "rot90";
    case Dihedral::Rot180: return "rot180";
    case Dihedral::Rot270: return "rot270";
    case Dihedral::HFlip: return "hflip";
    case Dihedral::VFlip: return "vflip";
    case Dihedral::Transpose: return "transpose";
    case Dihedral::AntiTranspose: return "anti_transpose";
  }
  return "?";
}

std::string describe(const TransformSpec& spec) {
  std::string s(to_string(spec.dihedral));
  if (spec.dx != 0 || spec.dy != 0) {
    s += "+shift(" + std::to_string(spec.dx) + "," + std::to_string(spec.dy) + ")";
  }
  return s;
}

PointXY map_point(Dihedral d, PointXY p, int width, int height) noexcept {
  const int w = width;
  const int h = height;
  switch (d) {
    case Dihedral::Identity: return p;
    case Dihedral::Rot90: return {h - 1 - p.y, p.x};
    case Dihedral::Rot180: return {w - 1 - p.x, h - 1 - p.y};
    case Dihedral::Rot270: return {p.y, w - 1 - p.x};
    case Dihedral::HFlip: return {w - 1 - p.x, p.y};
    case Dihedral::VFlip: return {p.x, h - 1 - p.y};
    case Dihedral::Transpose: return {p.y, p.x};
    case Dihedral::AntiTranspose: return {h - 1 - p.y, w - 1 - p.x};
  }
  return p;
}

int reflect_index(int i, int n) noexcept {
  const int period = 2 * n;
  int m = i % period;
  if (m < 0) m += period;
  return m < n ? m : period - 1 - m;
}

BinaryMask apply_transform(const BinaryMask& src, const TransformSpec& spec) {
  return BinaryMask(apply_transform(src.bits(), spec), src.positive_class());
}

ClickPointSet transform_points(const ClickPointSet& set, const TransformSpec& spec, int width, int height,
                               std::vector<DroppedPoint>* dropped) {
  set.check_bounds(width, height);
  const bool swap = swaps_axes(spec.dihedral);
  const int out_w = swap ? height : width;
  const int out_h = swap ? width : height;
  std::vector<ClickPoint> kept;
  kept.reserve(set.size());
  for (const ClickPoint& p : set) {
    const PointXY q = map_point(spec.dihedral, {p.x, p.y}, width, height);
    const int x = q.x + spec.dx;
    const int y = q.y + spec.dy;
    if (x < 0 || y < 0 || x >= out_w || y >= out_h) {
      if (dropped != nullptr) dropped->push_back({p.id, x, y});
      continue;
    }
    kept.push_back({x, y, p.id});
  }
  return ClickPointSet(std::move(kept), set.slice_name());
}

std::vector<TransformSpec> enumerate_transforms(int shift) {
  std::vector<TransformSpec> specs;
  specs.reserve(12);
  for (const Dihedral d : kAllDihedral) {
    specs.push_back({d, 0, 0});
  }
  specs.push_back({Dihedral::Identity, shift, 0});
  specs.push_back({Dihedral::Identity, -shift, 0});
  specs.push_back({Dihedral::Identity, 0, shift});
  specs.push_back({Dihedral::Identity, 0, -shift});
  return specs;
}

std::string Manifest::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const ManifestRow& row : rows) {
    nlohmann::json r{{"source", row.source}, {"transform_index", row.transform_index}, {"output", row.output}};
    if (!row.points_output.empty()) {
      r["points_output"] = row.points_output;
      nlohmann::json dropped = nlohmann::json::array();
      for (const DroppedPoint& d : row.dropped) {
        dropped.push_back({{"id", d.id}, {"x", d.x}, {"y", d.y}});
      }
      r["dropped_points"] = std::move(dropped);
    }
    rows_json.push_back(std::move(r));
  }
  return nlohmann::json{{"rows", std::move(rows_json)}}.dump(2) + "\n";
}

namespace {

std::string lower_ext(const fs::path& p) {
  std::string e = p.extension().string();
  std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return std::tolower(c); });
  return e;
}

}  // namespace

Manifest augment_dataset(const fs::path& in_dir, const fs::path& out_dir, const AugmentOptions& opts) {
  std::error_code ec;
  if (!fs::is_directory(in_dir, ec)) {
    throw Error(ErrorCode::IoFailure, "input directory " + in_dir.string() + " does not exist");
  }
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw Error(ErrorCode::IoFailure, "cannot create " + out_dir.string() + ": " + ec.message());
  }

  std::vector<fs::path> images;
  std::map<std::string, fs::path> point_files;
  for (const auto& entry : fs::directory_iterator(in_dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = lower_ext(entry.path());
    if (ext == ".pgm" || ext == ".png") {
      images.push_back(entry.path());
    } else if (opts.transform_points && (ext == ".json" || ext == ".csv")) {
      const std::string stem = entry.path().stem().string();
      // JSON wins over CSV for the same stem.
      if (!point_files.contains(stem) || ext == ".json") point_files[stem] = entry.path();
    }
  }
  std::sort(images.begin(), images.end());

  if (opts.transform_points) {
    for (const auto& [stem, path] : point_files) {
      const bool matched = std::any_of(images.begin(), images.end(), [&](const fs::path& p) {
        return p.stem().string() == stem;
      });
      if (!matched) {
        throw Error(ErrorCode::MismatchedPointFile, path.string() + " has no matching image");
      }
    }
  }

  const auto specs = enumerate_transforms(opts.shift);
  Manifest manifest;
  for (const fs::path& src : images) {
    const GrayImage img = load_image(src);
    const std::string stem = src.stem().string();
    std::optional<ClickPointSet> points;
    if (const auto it = point_files.find(stem); it != point_files.end()) {
      points = parse_clickpoints(it->second);
      try {
        points->check_bounds(img.width(), img.height());
      } catch (const Error& e) {
        throw Error(ErrorCode::MismatchedPointFile, it->second.string() + ": " + e.what());
      }
    }
    for (std::size_t k = 0; k < specs.size(); ++k) {
      const std::string base = stem + "__t" + std::to_string(k);
      const fs::path out = out_dir / (base + lower_ext(src));
      save_image(apply_transform(img, specs[k]), out);
      ManifestRow row{src.filename().string(), k, out.filename().string(), {}, {}};
      if (points) {
        ClickPointSet moved = transform_points(*points, specs[k], img.width(), img.height(), &row.dropped);
        moved.set_slice_name(base);
        const fs::path pts = out_dir / (base + ".json");
        save_clickpoints(moved, pts);
        row.points_output = pts.filename().string();
      }
      manifest.rows.push_back(std::move(row));
    }
  }

  std::ofstream mf(out_dir / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!mf) {
    throw Error(ErrorCode::IoFailure, "cannot write manifest in " + out_dir.string());
  }
  mf << manifest.to_json();
  return manifest;
}

}  // namespace neuroseg
