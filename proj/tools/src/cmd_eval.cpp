#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <ostream>

#include "commands.hpp"
#include "neuroseg/image_io.hpp"

namespace neuroseg::cli {
namespace {

bool wants_csv(const std::string& path) {
  const std::string ext = fs::path(path).extension().string();
  return ext == ".csv" || ext == ".CSV";
}

std::string fixed6(const std::optional<double>& v) {
  if (!v) return "undefined";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", *v);
  return buf;
}

json read_json_file(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw Error(ErrorCode::MissingFile, path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaViolation, path.string() + ": " + e.what());
  }
}

double matrix_cell(const json& entry, const char* key) {
  if (!entry.contains(key) || !entry.at(key).is_number()) {
    throw Error(ErrorCode::SchemaViolation, std::string("confusion entry needs numeric '") + key + "'");
  }
  return entry.at(key).get<double>();
}

int replay(const EvalArgs& args, std::ostream& out) {
  const json doc = read_json_file(args.from_confusion);
  const json* entries = &doc;
  if (doc.is_object()) {
    if (!doc.contains("matrices") || !doc.at("matrices").is_array()) {
      throw Error(ErrorCode::SchemaViolation, "expected a 'matrices' array");
    }
    entries = &doc.at("matrices");
  } else if (!doc.is_array()) {
    throw Error(ErrorCode::SchemaViolation, "expected an array of confusion matrices");
  }

  std::vector<EvalRun> runs;
  for (const json& e : *entries) {
    if (!e.is_object() || !e.contains("method") || !e.at("method").is_string()) {
      throw Error(ErrorCode::SchemaViolation, "confusion entry needs a 'method' name");
    }
    EvalRun run;
    run.method = e.at("method").get<std::string>();
    run.aggregate = ConfusionCounts::from_fractions(matrix_cell(e, "tp"), matrix_cell(e, "tn"), matrix_cell(e, "fp"),
                                                    matrix_cell(e, "fn"), kPublishedSumTolerance);
    run.report = evaluate(run.aggregate);
    if (e.contains("fpr") || e.contains("fnr")) {
      run.published_rates = ErrorRates{matrix_cell(e, "fpr"), matrix_cell(e, "fnr")};
      run.auroc_from_published_rates = auroc(run.published_rates->fpr, run.published_rates->fnr);
    }
    runs.push_back(std::move(run));
  }

  if (wants_csv(args.out)) {
    std::string csv = csv_header();
    for (const EvalRun& r : runs) csv += csv_row(r.method, "", "", std::nullopt, r.aggregate, r.report);
    write_text(args.out, csv);
  } else {
    json arr = json::array();
    for (const EvalRun& r : runs) arr.push_back(to_json(r));
    write_text(args.out, arr.dump(2) + "\n");
  }

  out << "method,kappa,auroc_from_matrix,auroc_from_published_rates,kappa_label,auroc_label\n";
  for (const EvalRun& r : runs) {
    const auto& label_source = r.auroc_from_published_rates ? r.auroc_from_published_rates : r.report.auroc;
    out << r.method << "," << fixed6(r.report.kap) << "," << fixed6(r.report.auroc) << ","
        << fixed6(r.auroc_from_published_rates) << "," << r.report.kappa_label.value_or("undefined") << ","
        << (label_source ? std::string(classify_auroc(*label_source)) : std::string("undefined")) << "\n";
  }
  return kOk;
}

std::map<std::string, fs::path> by_stem(const std::vector<fs::path>& files) {
  std::map<std::string, fs::path> m;
  for (const auto& f : files) m.emplace(f.stem().string(), f);
  return m;
}

}  // namespace

int cmd_eval(const EvalArgs& args, const GlobalOptions& global, std::ostream& out, std::ostream& err) {
  if (!args.from_confusion.empty()) {
    return replay(args, out);
  }

  const auto preds = by_stem(list_images(args.pred));
  const auto truths = by_stem(list_images(args.truth));
  int status = kOk;

  std::vector<std::pair<fs::path, fs::path>> pairs;
  for (const auto& [stem, pred] : preds) {
    const auto it = truths.find(stem);
    if (it == truths.end()) {
      err << "warning: UnmatchedFiles: prediction " << pred.filename().string() << " has no gold mask\n";
      if (global.strict) status = kIo;
      continue;
    }
    pairs.emplace_back(pred, it->second);
  }
  for (const auto& [stem, truth] : truths) {
    if (!preds.contains(stem)) {
      err << "warning: UnmatchedFiles: gold mask " << truth.filename().string() << " has no prediction\n";
      if (global.strict) status = kIo;
    }
  }

  struct Slot {
    std::optional<PixelCounts> counts;
    std::optional<Error> error;
  };
  std::vector<Slot> slots(pairs.size());
  parallel_for(pairs.size(), global.jobs, [&](std::size_t i) {
    try {
      const BinaryMask pred = load_mask(pairs[i].first, PositiveClass::Neuron);
      const BinaryMask truth = load_mask(pairs[i].second, PositiveClass::Neuron);
      slots[i].counts = count_confusion(pred, truth);
    } catch (const Error& e) {
      slots[i].error = e;
    }
  });

  EvalRun run;
  run.method = args.method;
  PixelCounts pooled;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (slots[i].error) {
      const Error& e = *slots[i].error;
      const bool soft = e.code() == ErrorCode::DimensionMismatch;
      err << (soft ? "warning: " : "error: ") << pairs[i].first.filename().string() << ": " << e.what()
          << (soft ? " (pair skipped)" : "") << "\n";
      if (!soft || global.strict) {
        if (status == kOk) status = exit_code_for(e.code());
      }
      continue;
    }
    const PixelCounts& c = *slots[i].counts;
    pooled += c;
    run.pairs.push_back(
        {pairs[i].first.filename().string(), pairs[i].second.filename().string(), c, evaluate(ConfusionCounts::from_pixels(c))});
  }
  if (run.pairs.empty()) {
    err << "error: no evaluable prediction/gold pairs\n";
    return status == kOk ? kIo : status;
  }
  run.pooled = pooled;
  run.aggregate = ConfusionCounts::from_pixels(pooled);
  run.report = evaluate(run.aggregate);

  if (wants_csv(args.out)) {
    std::string csv = csv_header();
    for (const PairResult& p : run.pairs) {
      csv += csv_row(run.method, p.pred, p.truth, p.counts, ConfusionCounts::from_pixels(p.counts), p.report);
    }
    csv += csv_row(run.method + " (pooled)", "", "", run.pooled, run.aggregate, run.report);
    write_text(args.out, csv);
  } else {
    write_text(args.out, to_json(run).dump(2) + "\n");
  }

  out << "pairs evaluated: " << run.pairs.size() << "\n";
  out << format_confusion_matrix(run.aggregate, 6);
  out << "pooled kappa: " << fixed6(run.report.kap) << " (" << run.report.kappa_label.value_or("undefined") << ")\n";
  out << "pooled auroc: " << fixed6(run.report.auroc) << " (" << run.report.auroc_label.value_or("undefined") << ")\n";
  for (const std::string& u : run.report.undefined) out << "undefined " << u << "\n";
  return status;
}

}  // namespace neuroseg::cli
