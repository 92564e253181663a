#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "commands.hpp"

namespace neuroseg::cli {
namespace {

std::vector<EvalRun> load_runs(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw Error(ErrorCode::MissingFile, path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaViolation, "MalformedRunFile " + path.string() + ": " + e.what());
  }
  std::vector<EvalRun> runs;
  try {
    if (doc.is_array()) {
      for (const json& j : doc) runs.push_back(run_from_json(j));
    } else {
      runs.push_back(run_from_json(doc));
    }
  } catch (const Error& e) {
    throw Error(ErrorCode::SchemaViolation, "MalformedRunFile " + path.string() + ": " + e.what());
  }
  return runs;
}

std::string cell(const std::optional<double>& v) {
  if (!v) return "undefined";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", *v);
  return buf;
}

}  // namespace

int cmd_report(const ReportArgs& args, const GlobalOptions&, std::ostream& out, std::ostream&) {
  std::vector<EvalRun> runs;
  for (const std::string& path : args.runs) {
    auto loaded = load_runs(path);
    std::move(loaded.begin(), loaded.end(), std::back_inserter(runs));
  }
  std::stable_sort(runs.begin(), runs.end(), [](const EvalRun& a, const EvalRun& b) { return a.method < b.method; });

  std::size_t name_width = 6;
  for (const EvalRun& r : runs) name_width = std::max(name_width, r.method.size());

  std::ostringstream text;
  text << std::left << std::setw(static_cast<int>(name_width) + 2) << "Method" << std::setw(19) << "Kappa Coefficient"
       << std::setw(11) << "AUROC" << std::setw(26) << "Kappa level"
       << "AUROC level\n";
  for (const EvalRun& r : runs) {
    text << std::setw(static_cast<int>(name_width) + 2) << r.method << std::setw(19) << cell(r.report.kap)
         << std::setw(11) << cell(r.report.auroc) << std::setw(26) << r.report.kappa_label.value_or("undefined")
         << r.report.auroc_label.value_or("undefined") << "\n";
  }
  for (const EvalRun& r : runs) {
    text << "\n" << r.method << " confusion matrix\n" << format_confusion_matrix(r.aggregate, 4);
    text << "FNR = " << cell(r.report.fnr) << ", FPR = " << cell(r.report.fpr) << "\n";
  }

  if (args.text.empty()) {
    out << text.str();
  } else {
    write_text(args.text, text.str());
  }
  if (!args.csv.empty()) {
    std::string csv = "method,kappa,auroc,kappa_label,auroc_label\n";
    for (const EvalRun& r : runs) {
      auto num = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
      csv += r.method + "," + num(r.report.kap) + "," + num(r.report.auroc) + "," +
             r.report.kappa_label.value_or("") + "," + r.report.auroc_label.value_or("") + "\n";
    }
    write_text(args.csv, csv);
  }
  return kOk;
}

}  // namespace neuroseg::cli
