#include "neuroseg_cli/cli.hpp"

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace neuroseg::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grow click-point annotations into neuron masks and score segmentations", "neuroseg"};
  app.require_subcommand(1);
  app.fallthrough();
  app.failure_message(CLI::FailureMessage::help);

  GlobalOptions global;
  app.add_flag("--strict", global.strict, "Treat skipped inputs as errors");
  app.add_option("--jobs", global.jobs, "Worker threads for per-slice work")->check(CLI::Range(1, 256));
  app.add_option("--seed", global.seed, "Reserved; no stochastic stage uses it yet");

  GrowArgs grow;
  auto* grow_cmd = app.add_subcommand("grow", "Grow click-points into label masks");
  grow_cmd->add_option("--method", grow.method, "floodfill | region")
      ->required()
      ->check(CLI::IsMember({"floodfill", "region"}));
  grow_cmd->add_option("--images", grow.images, "Directory of grayscale slices")->required();
  grow_cmd->add_option("--points", grow.points, "Directory of <stem>.json / <stem>.csv click-points")->required();
  grow_cmd->add_option("--out", grow.out, "Output directory")->required();
  grow_cmd->add_option("--threshold", grow.threshold, "Binarization threshold (0-255) or 'auto' for Otsu")->capture_default_str();
  grow_cmd->add_option("--se-radius", grow.se_radius, "Closing disk radius")->capture_default_str()->check(CLI::Range(1, 1000));
  grow_cmd->add_option("--connectivity", grow.connectivity, "Fill connectivity")->capture_default_str()->check(CLI::IsMember({4, 8}));
  grow_cmd->add_option("--leak-fraction", grow.leak_fraction, "Flood-fill leak cap as a fraction of image area")->capture_default_str()
      ->check(CLI::Range(1e-12, 1.0));
  grow_cmd->add_option("--region-threshold", grow.region_threshold, "Region growing intensity threshold")->capture_default_str()
      ->check(CLI::PositiveNumber);
  grow_cmd->add_option("--max-region", grow.max_region, "Region size cap in pixels (default: quarter of the image)")
      ->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
  grow_cmd->add_flag("--luma", grow.luma, "Convert colour slices to gray (BT.601)");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score predicted masks against gold masks");
  auto* pred_opt = eval_cmd->add_option("--pred", eval.pred, "Directory of predicted masks");
  auto* truth_opt = eval_cmd->add_option("--truth", eval.truth, "Directory of gold masks");
  auto* replay_opt = eval_cmd->add_option("--from-confusion", eval.from_confusion, "Replay published confusion matrices");
  eval_cmd->add_option("--out", eval.out, "report.json or report.csv")->required();
  eval_cmd->add_option("--method", eval.method, "Method name recorded in the run")->capture_default_str();
  pred_opt->needs(truth_opt);
  truth_opt->needs(pred_opt);
  replay_opt->excludes(pred_opt)->excludes(truth_opt);

  ReportArgs report;
  auto* report_cmd = app.add_subcommand("report", "Side-by-side table of evaluation runs");
  report_cmd->add_option("runs", report.runs, "Run JSON files written by eval")->required();
  report_cmd->add_option("--csv", report.csv, "Also write the table as CSV");
  report_cmd->add_option("--text", report.text, "Write the text table here instead of stdout");

  AugmentArgs augment;
  auto* augment_cmd = app.add_subcommand("augment", "Write the 12 flips/rotations/translations of each image");
  augment_cmd->add_option("--in", augment.in, "Input directory")->required();
  augment_cmd->add_option("--out", augment.out, "Output directory")->required();
  augment_cmd->add_option("--shift", augment.shift, "Translation magnitude in pixels")->capture_default_str()->check(CLI::Range(0, 1 << 20));
  augment_cmd->add_flag("--points", augment.points, "Transform matching click-point files too");

  ExtractArgs extract;
  auto* extract_cmd = app.add_subcommand("extract-points", "Read red click markers from an annotated overlay");
  extract_cmd->add_option("--overlay", extract.overlay, "RGB overlay (PNG or PPM)")->required();
  extract_cmd->add_option("--base", extract.base, "Matching grayscale slice")->required();
  extract_cmd->add_option("--out", extract.out, "Click-point JSON to write")->required();
  extract_cmd->add_option("--slice", extract.slice, "Slice name (default: base file stem)");
  extract_cmd->add_option("--red-min", extract.red_min, "Minimum red channel")->capture_default_str()->check(CLI::Range(0, 255));
  extract_cmd->add_option("--green-max", extract.green_max, "Maximum green channel")->capture_default_str()->check(CLI::Range(0, 255));
  extract_cmd->add_option("--blue-max", extract.blue_max, "Maximum blue channel")->capture_default_str()->check(CLI::Range(0, 255));
  extract_cmd->add_flag("--luma", extract.luma, "Allow a colour base image (BT.601)");

  BinarizeArgs binarize;
  auto* binarize_cmd = app.add_subcommand("binarize", "Threshold a slice into a 0/255 membrane mask");
  binarize_cmd->add_option("--in", binarize.in, "Grayscale slice")->required();
  binarize_cmd->add_option("--out", binarize.out, "Mask to write")->required();
  binarize_cmd->add_option("--threshold", binarize.threshold, "0-255 or 'auto' for Otsu")->capture_default_str();
  binarize_cmd->add_flag("--luma", binarize.luma, "Convert colour input to gray (BT.601)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (grow_cmd->parsed()) return cmd_grow(grow, global, out, err);
    if (eval_cmd->parsed()) {
      if (eval.from_confusion.empty() && eval.pred.empty()) {
        err << "eval: give either --pred/--truth or --from-confusion\n" << eval_cmd->help();
        return kUsage;
      }
      return cmd_eval(eval, global, out, err);
    }
    if (report_cmd->parsed()) return cmd_report(report, global, out, err);
    if (augment_cmd->parsed()) return cmd_augment(augment, global, out, err);
    if (extract_cmd->parsed()) return cmd_extract_points(extract, global, out, err);
    if (binarize_cmd->parsed()) return cmd_binarize(binarize, global, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace neuroseg::cli
