#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "neuroseg/error.hpp"
#include "neuroseg/metrics.hpp"
#include "neuroseg_cli/cli.hpp"

namespace neuroseg::cli {

namespace fs = std::filesystem;
using nlohmann::json;

struct GlobalOptions {
  bool strict = false;
  int jobs = 1;
  // Accepted for forward compatibility; nothing in the pipeline is random yet.
  std::optional<std::uint64_t> seed;
};

int exit_code_for(ErrorCode code) noexcept;

/// Sorted PGM/PNG files directly inside `dir`.
std::vector<fs::path> list_images(const fs::path& dir);

/// `<stem>.json`, else `<stem>.csv`, inside `dir`.
std::optional<fs::path> find_points_file(const fs::path& dir, const std::string& stem);

/// Runs fn(0..n-1) on up to `jobs` threads. Each index runs exactly once; the
/// caller owns result ordering.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

/// "auto" -> empty; otherwise an integer 0..255.
std::optional<std::uint8_t> parse_threshold(const std::string& text);

void write_text(const fs::path& path, const std::string& text);

struct PairResult {
  std::string pred;
  std::string truth;
  PixelCounts counts;
  MetricsReport report;
};

/// One evaluated method: per-pair rows and the pooled result.
struct EvalRun {
  std::string method;
  std::vector<PairResult> pairs;
  std::optional<PixelCounts> pooled;  ///< absent when replayed from a matrix
  ConfusionCounts aggregate;
  MetricsReport report;
  std::optional<ErrorRates> published_rates;
  std::optional<double> auroc_from_published_rates;
};

json to_json(const PixelCounts& c);
json to_json(const ConfusionCounts& c);
json to_json(const MetricsReport& r);
json to_json(const EvalRun& run);

/// Throws Error(SchemaViolation) naming the offending field.
EvalRun run_from_json(const json& j);

std::string format_double(double v);

/// CSV header and row shared by eval and report outputs.
std::string csv_header();
std::string csv_row(const std::string& name, const std::string& pred, const std::string& truth,
                    const std::optional<PixelCounts>& counts, const ConfusionCounts& fractions,
                    const MetricsReport& report);

}  // namespace neuroseg::cli
