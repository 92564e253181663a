#include <ostream>

#include "commands.hpp"
#include "neuroseg/floodfill.hpp"
#include "neuroseg/image_io.hpp"
#include "neuroseg/regiongrow.hpp"

namespace neuroseg::cli {
namespace {

struct SliceOutcome {
  int status = kOk;
  bool skipped = false;
  std::string message;
  std::vector<std::uint32_t> leaked;
  std::vector<std::uint32_t> missed;
};

std::string join_ids(const std::vector<std::uint32_t>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(ids[i]);
  }
  return s;
}

}  // namespace

int cmd_grow(const GrowArgs& args, const GlobalOptions& global, std::ostream& out, std::ostream& err) {
  const auto threshold = parse_threshold(args.threshold);
  const Connectivity connectivity = args.connectivity == 8 ? Connectivity::Eight : Connectivity::Four;
  const FloodFillParams ff{threshold, args.se_radius, connectivity, args.leak_fraction};
  RegionGrowParams rg;
  rg.threshold = args.region_threshold;
  rg.connectivity = connectivity;
  rg.max_region = args.max_region;
  // Validate once up front so a bad parameter is a usage error, not N slice failures.
  (void)StructuringElement::disk(args.se_radius);

  const auto images = list_images(args.images);
  const fs::path out_dir(args.out);
  for (const char* sub : {"labels", "masks", "reports"}) {
    std::error_code ec;
    fs::create_directories(out_dir / sub, ec);
    if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + (out_dir / sub).string() + ": " + ec.message());
  }

  std::vector<SliceOutcome> outcomes(images.size());
  parallel_for(images.size(), global.jobs, [&](std::size_t i) {
    SliceOutcome& o = outcomes[i];
    const std::string stem = images[i].stem().string();
    const auto points_path = find_points_file(args.points, stem);
    if (!points_path) {
      o.skipped = true;
      o.message = "slice " + stem + ": no click-point file in " + args.points + ", skipped";
      return;
    }
    try {
      const GrayImage img = load_image(images[i], LoadOptions{args.luma});
      const ClickPointSet seeds = parse_clickpoints(*points_path);
      const FillResult result =
          args.method == "floodfill" ? grow_floodfill(img, seeds, ff) : grow_all(img, seeds, rg);
      save_labels(result.labels, out_dir / "labels" / (stem + ".png"));
      save_image(label_union(result.labels), out_dir / "masks" / (stem + ".png"));
      write_text(out_dir / "reports" / (stem + ".json"), fill_report_json(result));
      o.leaked = result.leaked_ids;
      o.missed = result.missed_ids;
    } catch (const Error& e) {
      o.status = exit_code_for(e.code());
      o.message = "slice " + stem + ": " + e.what();
    }
  });

  int status = kOk;
  std::size_t warnings = 0;
  std::size_t grown = 0;
  for (const SliceOutcome& o : outcomes) {
    if (o.skipped) {
      ++warnings;
      err << "error: " << o.message << "\n";
      if (global.strict && status == kOk) status = kIo;
      continue;
    }
    if (o.status != kOk) {
      err << "error: " << o.message << "\n";
      if (status == kOk) status = o.status;
      continue;
    }
    ++grown;
    if (!o.leaked.empty() || !o.missed.empty()) {
      ++warnings;
    }
  }
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const SliceOutcome& o = outcomes[i];
    if (o.leaked.empty() && o.missed.empty()) continue;
    err << "warning: slice " << images[i].stem().string() << ": leaked [" << join_ids(o.leaked) << "] missed ["
        << join_ids(o.missed) << "]\n";
  }
  out << "grew " << grown << " of " << images.size() << " slices with " << args.method << " (" << warnings
      << " warnings)\n";
  return status;
}

}  // namespace neuroseg::cli
