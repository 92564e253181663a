#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "neuroseg/raster.hpp"

namespace neuroseg {

/// Integer pixel tallies. Pooling a test set means summing these.
struct PixelCounts {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  [[nodiscard]] std::uint64_t total() const noexcept { return tp + tn + fp + fn; }
  PixelCounts& operator+=(const PixelCounts& o) noexcept {
    tp += o.tp;
    tn += o.tn;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  bool operator==(const PixelCounts&) const = default;
};

/// Confusion cells as fractions of all pixels (N = 1).
struct ConfusionCounts {
  double tp = 0;
  double tn = 0;
  double fp = 0;
  double fn = 0;

  /// Exact normalization of integer tallies. Throws InvalidCounts when total is 0.
  static ConfusionCounts from_pixels(const PixelCounts& counts);

  /// Validated construction: each cell in [0,1] and the four summing to 1
  /// within `sum_tolerance` (5e-4 suits 4-decimal published matrices).
  static ConfusionCounts from_fractions(double tp, double tn, double fp, double fn, double sum_tolerance = 1e-9);

  [[nodiscard]] double sum() const noexcept { return tp + tn + fp + fn; }
};

inline constexpr double kExactSumTolerance = 1e-9;
inline constexpr double kPublishedSumTolerance = 5e-4;

/// Throws DimensionMismatch, or ClassMismatch unless both masks are Neuron masks.
PixelCounts count_confusion(const BinaryMask& pred, const BinaryMask& truth);
ConfusionCounts confusion_from_masks(const BinaryMask& pred, const BinaryMask& truth);

double accuracy(const ConfusionCounts& c);
/// Throws EmptyUnion when tp + fp + fn == 0.
double jaccard(const ConfusionCounts& c);
/// Throws EmptyUnion when 2tp + fp + fn == 0.
double dice(const ConfusionCounts& c);

struct KappaTerms {
  double kap;
  double pa;  ///< observed agreement
  double pc;  ///< chance agreement
  double fa;
  double fc;
};

/// Cohen's kappa with N = 1: fa = tp + tn,
/// fc = (tn + fn)(tn + fp) + (fp + tp)(fn + tp), kap = (fa - fc) / (1 - fc).
/// Throws DegenerateAgreement when fc == 1.
KappaTerms kappa(const ConfusionCounts& c);

struct ErrorRates {
  double fpr;
  double fnr;
};

/// fpr = fp / (fp + tn), fnr = fn / (fn + tp). Throws NoNegatives or
/// NoPositives when a denominator is zero.
ErrorRates error_rates(const ConfusionCounts& c);
double false_positive_rate(const ConfusionCounts& c);
double false_negative_rate(const ConfusionCounts& c);

/// 1 - (fpr + fnr) / 2: the area under the single-operating-point ROC polygon
/// of a hard mask (balanced accuracy). Throws InvalidArgument outside [0,1].
double auroc(double fpr, double fnr);

/// Landis & Koch bands: (-inf,0) no; [0,.2] slight; (.2,.4] fair;
/// (.4,.6] moderate; (.6,.8] substantial; (.8,1] almost perfect.
std::string_view classify_kappa(double kap);

/// Academic-grade bands, lower-inclusive: [.5,.6) F, [.6,.7) D, [.7,.8) C,
/// [.8,.9) B, [.9,1] A; below .5 is "worse than chance".
std::string_view classify_auroc(double a);

/// Every score for one evaluation. A score whose formula divides by zero is
/// left empty and the reason is recorded in `undefined`.
struct MetricsReport {
  std::optional<double> acc, jac, dice, kap, pa, pc, fa, fc, fpr, fnr, auroc;
  std::optional<std::string> kappa_label;
  std::optional<std::string> auroc_label;
  std::vector<std::string> undefined;
};

MetricsReport evaluate(const ConfusionCounts& c);

/// 2x2 layout with actual classes as rows and predictions as columns.
std::string format_confusion_matrix(const ConfusionCounts& c, int precision = 4);

}  // namespace neuroseg
