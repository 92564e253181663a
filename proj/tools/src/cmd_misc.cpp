#include <ostream>

#include "commands.hpp"
#include "neuroseg/augment.hpp"
#include "neuroseg/clickpoints.hpp"
#include "neuroseg/image_io.hpp"
#include "neuroseg/threshold.hpp"

namespace neuroseg::cli {

int cmd_augment(const AugmentArgs& args, const GlobalOptions&, std::ostream& out, std::ostream& err) {
  const Manifest manifest = augment_dataset(args.in, args.out, AugmentOptions{args.shift, args.points});
  std::size_t dropped = 0;
  for (const ManifestRow& row : manifest.rows) {
    for (const DroppedPoint& d : row.dropped) {
      err << "note: " << row.output << ": click-point " << d.id << " moved off the image to (" << d.x << ", " << d.y
          << "), dropped\n";
      ++dropped;
    }
  }
  out << "wrote " << manifest.rows.size() << " images (" << dropped << " points dropped)\n";
  return kOk;
}

int cmd_extract_points(const ExtractArgs& args, const GlobalOptions&, std::ostream& out, std::ostream&) {
  const RgbImage overlay = load_rgb(args.overlay);
  const GrayImage base = load_image(args.base, LoadOptions{args.luma});
  ClickPointSet points = extract_from_overlay(overlay, base, RedMarker{args.red_min, args.green_max, args.blue_max});
  points.set_slice_name(args.slice.empty() ? fs::path(args.base).stem().string() : args.slice);
  save_clickpoints(points, args.out);
  out << "extracted " << points.size() << " click-points\n";
  return kOk;
}

int cmd_binarize(const BinarizeArgs& args, const GlobalOptions&, std::ostream& out, std::ostream&) {
  const GrayImage img = load_image(args.in, LoadOptions{args.luma});
  const auto fixed = parse_threshold(args.threshold);
  std::uint8_t t = 0;
  if (fixed) {
    t = *fixed;
    save_image(threshold_fixed(img, t), args.out);
  } else {
    const OtsuResult r = threshold_otsu(img);
    t = r.threshold;
    save_image(r.mask, args.out);
  }
  out << "threshold " << static_cast<int>(t) << "\n";
  return kOk;
}

}  // namespace neuroseg::cli
