#include "neuroseg/metrics.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace neuroseg {

ConfusionCounts ConfusionCounts::from_pixels(const PixelCounts& counts) {
  const std::uint64_t total = counts.total();
  if (total == 0) {
    throw Error(ErrorCode::InvalidCounts, "no pixels to normalize");
  }
  const auto n = static_cast<double>(total);
  return {static_cast<double>(counts.tp) / n, static_cast<double>(counts.tn) / n, static_cast<double>(counts.fp) / n,
          static_cast<double>(counts.fn) / n};
}

ConfusionCounts ConfusionCounts::from_fractions(double tp, double tn, double fp, double fn, double sum_tolerance) {
  for (const double v : {tp, tn, fp, fn}) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw Error(ErrorCode::InvalidCounts, "confusion cells must lie in [0, 1]");
    }
  }
  const double sum = tp + tn + fp + fn;
  if (std::abs(sum - 1.0) > sum_tolerance) {
    std::ostringstream msg;
    msg << "confusion cells sum to " << std::setprecision(17) << sum << ", not 1";
    throw Error(ErrorCode::InvalidCounts, msg.str());
  }
  return {tp, tn, fp, fn};
}

PixelCounts count_confusion(const BinaryMask& pred, const BinaryMask& truth) {
  if (pred.width() != truth.width() || pred.height() != truth.height()) {
    throw Error(ErrorCode::DimensionMismatch, "prediction " + std::to_string(pred.width()) + "x" +
                                                  std::to_string(pred.height()) + " vs truth " +
                                                  std::to_string(truth.width()) + "x" + std::to_string(truth.height()));
  }
  if (pred.positive_class() != PositiveClass::Neuron || truth.positive_class() != PositiveClass::Neuron) {
    throw Error(ErrorCode::ClassMismatch, "metrics compare Neuron masks");
  }
  PixelCounts c;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred.get(i);
    const bool t = truth.get(i);
    if (p && t) ++c.tp;
    else if (!p && !t) ++c.tn;
    else if (p) ++c.fp;
    else ++c.fn;
  }
  return c;
}

ConfusionCounts confusion_from_masks(const BinaryMask& pred, const BinaryMask& truth) {
  return ConfusionCounts::from_pixels(count_confusion(pred, truth));
}

double accuracy(const ConfusionCounts& c) { return (c.tp + c.tn) / c.sum(); }

double jaccard(const ConfusionCounts& c) {
  const double denom = c.tp + c.fp + c.fn;
  if (denom <= 0.0) {
    throw Error(ErrorCode::EmptyUnion, "no positives in either mask");
  }
  return c.tp / denom;
}

double dice(const ConfusionCounts& c) {
  const double denom = 2.0 * c.tp + c.fp + c.fn;
  if (denom <= 0.0) {
    throw Error(ErrorCode::EmptyUnion, "no positives in either mask");
  }
  return 2.0 * c.tp / denom;
}

KappaTerms kappa(const ConfusionCounts& c) {
  const double fa = c.tp + c.tn;
  const double fc = (c.tn + c.fn) * (c.tn + c.fp) + (c.fp + c.tp) * (c.fn + c.tp);
  if (std::abs(1.0 - fc) < 1e-15) {
    throw Error(ErrorCode::DegenerateAgreement, "all mass in one confusion cell; kappa undefined");
  }
  return {(fa - fc) / (1.0 - fc), fa, fc, fa, fc};
}

double false_positive_rate(const ConfusionCounts& c) {
  const double negatives = c.fp + c.tn;
  if (negatives <= 0.0) {
    throw Error(ErrorCode::NoNegatives, "no actual negatives; FPR undefined");
  }
  return c.fp / negatives;
}

double false_negative_rate(const ConfusionCounts& c) {
  const double positives = c.fn + c.tp;
  if (positives <= 0.0) {
    throw Error(ErrorCode::NoPositives, "no actual positives; FNR undefined");
  }
  return c.fn / positives;
}

ErrorRates error_rates(const ConfusionCounts& c) { return {false_positive_rate(c), false_negative_rate(c)}; }

double auroc(double fpr, double fnr) {
  if (!(fpr >= 0.0 && fpr <= 1.0 && fnr >= 0.0 && fnr <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "error rates must lie in [0, 1]");
  }
  return 1.0 - (fpr + fnr) / 2.0;
}

std::string_view classify_kappa(double kap) {
  if (kap < 0.0) return "no agreement";
  if (kap <= 0.20) return "slight agreement";
  if (kap <= 0.40) return "fair agreement";
  if (kap <= 0.60) return "moderate agreement";
  if (kap <= 0.80) return "substantial agreement";
  return "almost perfect agreement";
}

std::string_view classify_auroc(double a) {
  if (a < 0.5) return "worse than chance";
  if (a < 0.6) return "no agreement (F)";
  if (a < 0.7) return "poor agreement (D)";
  if (a < 0.8) return "fair agreement (C)";
  if (a < 0.9) return "good agreement (B)";
  return "excellent agreement (A)";
}

MetricsReport evaluate(const ConfusionCounts& c) {
  MetricsReport r;
  auto attempt = [&r](const char* name, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      r.undefined.push_back(std::string(name) + ": " + std::string(to_string(e.code())));
    }
  };
  r.acc = accuracy(c);
  attempt("jac", [&] { r.jac = jaccard(c); });
  attempt("dice", [&] { r.dice = dice(c); });
  attempt("kap", [&] {
    const KappaTerms k = kappa(c);
    r.kap = k.kap;
    r.pa = k.pa;
    r.pc = k.pc;
    r.fa = k.fa;
    r.fc = k.fc;
    r.kappa_label = std::string(classify_kappa(k.kap));
  });
  attempt("fpr", [&] { r.fpr = false_positive_rate(c); });
  attempt("fnr", [&] { r.fnr = false_negative_rate(c); });
  if (r.fpr && r.fnr) {
    r.auroc = auroc(*r.fpr, *r.fnr);
    r.auroc_label = std::string(classify_auroc(*r.auroc));
  } else {
    r.undefined.emplace_back("auroc: needs both error rates");
  }
  return r;
}

std::string format_confusion_matrix(const ConfusionCounts& c, int precision) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(precision);
  out << std::left << std::setw(20) << "" << std::setw(22) << "Predicted Background"
      << "Predicted Neuron\n";
  out << std::setw(20) << "Actual Background" << std::setw(22) << c.tn << c.fp << "\n";
  out << std::setw(20) << "Actual Neuron" << std::setw(22) << c.fn << c.tp << "\n";
  return out.str();
}

}  // namespace neuroseg
