#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"

namespace neuroseg::cli {

struct GrowArgs {
  std::string method;
  std::string images;
  std::string points;
  std::string out;
  std::string threshold = "auto";
  int se_radius = 2;
  int connectivity = 4;
  double leak_fraction = 0.25;
  double region_threshold = 30.0;
  std::optional<std::size_t> max_region;
  bool luma = false;
};

struct EvalArgs {
  std::string pred;
  std::string truth;
  std::string out;
  std::string method = "external-prediction";
  std::string from_confusion;
};

struct ReportArgs {
  std::vector<std::string> runs;
  std::string csv;
  std::string text;
};

struct AugmentArgs {
  std::string in;
  std::string out;
  int shift = 64;
  bool points = false;
};

struct ExtractArgs {
  std::string overlay;
  std::string base;
  std::string out;
  std::string slice;
  int red_min = 200;
  int green_max = 80;
  int blue_max = 80;
  bool luma = false;
};

struct BinarizeArgs {
  std::string in;
  std::string out;
  std::string threshold = "auto";
  bool luma = false;
};

int cmd_grow(const GrowArgs& args, const GlobalOptions& global, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalArgs& args, const GlobalOptions& global, std::ostream& out, std::ostream& err);
int cmd_report(const ReportArgs& args, const GlobalOptions& global, std::ostream& out, std::ostream& err);
int cmd_augment(const AugmentArgs& args, const GlobalOptions& global, std::ostream& out, std::ostream& err);
int cmd_extract_points(const ExtractArgs& args, const GlobalOptions& global, std::ostream& out, std::ostream& err);
int cmd_binarize(const BinarizeArgs& args, const GlobalOptions& global, std::ostream& out, std::ostream& err);

}  // namespace neuroseg::cli
