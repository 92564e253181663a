#include "common.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <thread>

namespace neuroseg::cli {

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MissingFile:
    case ErrorCode::IoFailure:
      return kIo;
    case ErrorCode::UnsupportedFormat:
    case ErrorCode::CorruptData:
    case ErrorCode::SchemaViolation:
    case ErrorCode::DuplicateCoordinate:
    case ErrorCode::DuplicateId:
    case ErrorCode::OutOfBounds:
    case ErrorCode::MismatchedPointFile:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::ClassMismatch:
    case ErrorCode::InvalidCounts:
    case ErrorCode::DegenerateHistogram:
      return kSchema;
    case ErrorCode::InvalidArgument:
      return kUsage;
    case ErrorCode::EmptyUnion:
    case ErrorCode::DegenerateAgreement:
    case ErrorCode::NoNegatives:
    case ErrorCode::NoPositives:
      return kInternal;
  }
  return kInternal;
}

std::vector<fs::path> list_images(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(ErrorCode::MissingFile, "directory " + dir.string() + " does not exist");
  }
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".png" || ext == ".pgm") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<fs::path> find_points_file(const fs::path& dir, const std::string& stem) {
  for (const char* ext : {".json", ".csv"}) {
    fs::path p = dir / (stem + ext);
    std::error_code ec;
    if (fs::is_regular_file(p, ec)) return p;
  }
  return std::nullopt;
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const std::size_t count = std::min(workers, n);
  pool.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

std::optional<std::uint8_t> parse_threshold(const std::string& text) {
  if (text == "auto") return std::nullopt;
  int v = -1;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || v < 0 || v > 255) {
    throw Error(ErrorCode::InvalidArgument, "--threshold must be 'auto' or an integer in 0..255");
  }
  return static_cast<std::uint8_t>(v);
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoFailure, "short write to " + path.string());
}

json to_json(const PixelCounts& c) { return {{"tp", c.tp}, {"tn", c.tn}, {"fp", c.fp}, {"fn", c.fn}}; }

json to_json(const ConfusionCounts& c) { return {{"tp", c.tp}, {"tn", c.tn}, {"fp", c.fp}, {"fn", c.fn}}; }

json to_json(const MetricsReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  auto opt_s = [](const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); };
  return {{"acc", opt(r.acc)},   {"jac", opt(r.jac)},
          {"dice", opt(r.dice)}, {"kap", opt(r.kap)},
          {"pa", opt(r.pa)},     {"pc", opt(r.pc)},
          {"fa", opt(r.fa)},     {"fc", opt(r.fc)},
          {"fpr", opt(r.fpr)},   {"fnr", opt(r.fnr)},
          {"auroc", opt(r.auroc)}, {"kappa_label", opt_s(r.kappa_label)},
          {"auroc_label", opt_s(r.auroc_label)}, {"undefined", r.undefined}};
}

json to_json(const EvalRun& run) {
  json pairs = json::array();
  for (const PairResult& p : run.pairs) {
    pairs.push_back({{"pred", p.pred}, {"truth", p.truth}, {"counts", to_json(p.counts)}, {"metrics", to_json(p.report)}});
  }
  json aggregate{{"fractions", to_json(run.aggregate)}};
  if (run.pooled) aggregate["counts"] = to_json(*run.pooled);
  json j{{"method", run.method}, {"pairs", std::move(pairs)}, {"aggregate", std::move(aggregate)},
         {"report", to_json(run.report)}};
  if (run.published_rates) {
    j["published_rates"] = {{"fpr", run.published_rates->fpr}, {"fnr", run.published_rates->fnr}};
  }
  if (run.auroc_from_published_rates) {
    j["auroc_from_published_rates"] = *run.auroc_from_published_rates;
  }
  return j;
}

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::SchemaViolation, "run file: " + what); }

double number_at(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_number()) {
    malformed(std::string("'") + key + "' missing or not a number");
  }
  return obj.at(key).get<double>();
}

std::optional<double> optional_number_at(const json& obj, const char* key) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  if (!obj.at(key).is_number()) malformed(std::string("'") + key + "' is not a number");
  return obj.at(key).get<double>();
}

std::optional<std::string> optional_string_at(const json& obj, const char* key) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  if (!obj.at(key).is_string()) malformed(std::string("'") + key + "' is not a string");
  return obj.at(key).get<std::string>();
}

MetricsReport report_from_json(const json& j) {
  if (!j.is_object()) malformed("'report' must be an object");
  MetricsReport r;
  r.acc = optional_number_at(j, "acc");
  r.jac = optional_number_at(j, "jac");
  r.dice = optional_number_at(j, "dice");
  r.kap = optional_number_at(j, "kap");
  r.pa = optional_number_at(j, "pa");
  r.pc = optional_number_at(j, "pc");
  r.fa = optional_number_at(j, "fa");
  r.fc = optional_number_at(j, "fc");
  r.fpr = optional_number_at(j, "fpr");
  r.fnr = optional_number_at(j, "fnr");
  r.auroc = optional_number_at(j, "auroc");
  r.kappa_label = optional_string_at(j, "kappa_label");
  r.auroc_label = optional_string_at(j, "auroc_label");
  if (j.contains("undefined")) {
    if (!j.at("undefined").is_array()) malformed("'undefined' must be an array");
    for (const auto& u : j.at("undefined")) {
      if (!u.is_string()) malformed("'undefined' entries must be strings");
      r.undefined.push_back(u.get<std::string>());
    }
  }
  return r;
}

}  // namespace

EvalRun run_from_json(const json& j) {
  if (!j.is_object()) malformed("run must be an object");
  EvalRun run;
  if (!j.contains("method") || !j.at("method").is_string()) malformed("'method' missing");
  run.method = j.at("method").get<std::string>();
  if (!j.contains("aggregate") || !j.at("aggregate").is_object()) malformed("'aggregate' missing");
  const json& agg = j.at("aggregate");
  if (!agg.contains("fractions")) malformed("'aggregate.fractions' missing");
  const json& fr = agg.at("fractions");
  run.aggregate = {number_at(fr, "tp"), number_at(fr, "tn"), number_at(fr, "fp"), number_at(fr, "fn")};
  if (agg.contains("counts")) {
    const json& c = agg.at("counts");
    auto count = [&](const char* key) {
      if (!c.contains(key) || !c.at(key).is_number_unsigned()) malformed(std::string("count '") + key + "' invalid");
      return c.at(key).get<std::uint64_t>();
    };
    run.pooled = PixelCounts{count("tp"), count("tn"), count("fp"), count("fn")};
  }
  if (!j.contains("report")) malformed("'report' missing");
  run.report = report_from_json(j.at("report"));
  if (j.contains("published_rates")) {
    const json& pr = j.at("published_rates");
    run.published_rates = ErrorRates{number_at(pr, "fpr"), number_at(pr, "fnr")};
  }
  run.auroc_from_published_rates = optional_number_at(j, "auroc_from_published_rates");
  if (j.contains("pairs")) {
    if (!j.at("pairs").is_array()) malformed("'pairs' must be an array");
    for (const json& p : j.at("pairs")) {
      PairResult pr;
      pr.pred = optional_string_at(p, "pred").value_or("");
      pr.truth = optional_string_at(p, "truth").value_or("");
      if (p.contains("counts")) {
        const json& c = p.at("counts");
        pr.counts = {static_cast<std::uint64_t>(number_at(c, "tp")), static_cast<std::uint64_t>(number_at(c, "tn")),
                     static_cast<std::uint64_t>(number_at(c, "fp")), static_cast<std::uint64_t>(number_at(c, "fn"))};
      }
      if (p.contains("metrics")) pr.report = report_from_json(p.at("metrics"));
      run.pairs.push_back(std::move(pr));
    }
  }
  return run;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_header() {
  return "name,pred,truth,tp_pixels,tn_pixels,fp_pixels,fn_pixels,tp,tn,fp,fn,acc,jac,dice,kap,fpr,fnr,auroc,"
         "kappa_label,auroc_label\n";
}

std::string csv_row(const std::string& name, const std::string& pred, const std::string& truth,
                    const std::optional<PixelCounts>& counts, const ConfusionCounts& fractions,
                    const MetricsReport& r) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  std::string row = quote(name) + "," + quote(pred) + "," + quote(truth) + ",";
  if (counts) {
    row += std::to_string(counts->tp) + "," + std::to_string(counts->tn) + "," + std::to_string(counts->fp) + "," +
           std::to_string(counts->fn) + ",";
  } else {
    row += ",,,,";
  }
  row += format_double(fractions.tp) + "," + format_double(fractions.tn) + "," + format_double(fractions.fp) + "," +
         format_double(fractions.fn) + ",";
  row += opt(r.acc) + "," + opt(r.jac) + "," + opt(r.dice) + "," + opt(r.kap) + "," + opt(r.fpr) + "," +
         opt(r.fnr) + "," + opt(r.auroc) + ",";
  row += quote(r.kappa_label.value_or("")) + "," + quote(r.auroc_label.value_or("")) + "\n";
  return row;
}

}  // namespace neuroseg::cli
