#include "neuroseg/threshold.hpp"

namespace neuroseg {

BinaryMask threshold_fixed(const GrayImage& img, std::uint8_t t) {
  BinaryMask mask(img.width(), img.height(), PositiveClass::Border);
  for (std::size_t i = 0; i < img.size(); ++i) {
    mask.set(i, img[i] < t);
  }
  return mask;
}

std::uint8_t otsu_threshold(const std::array<std::uint64_t, 256>& histogram) {
  std::uint64_t total = 0;
  std::uint64_t total_sum = 0;
  int distinct = 0;
  for (int v = 0; v < 256; ++v) {
    total += histogram[v];
    total_sum += histogram[v] * static_cast<std::uint64_t>(v);
    distinct += histogram[v] != 0 ? 1 : 0;
  }
  if (distinct < 2) {
    throw Error(ErrorCode::DegenerateHistogram, "image has a single intensity; supply a fixed threshold");
  }

  // Candidate t splits {v < t} from {v >= t}; t = 0 leaves the lower class empty.
  const double n = static_cast<double>(total);
  double best = -1.0;
  int best_t = 1;
  std::uint64_t n0 = 0;
  std::uint64_t s0 = 0;
  for (int t = 1; t < 256; ++t) {
    n0 += histogram[t - 1];
    s0 += histogram[t - 1] * static_cast<std::uint64_t>(t - 1);
    const std::uint64_t n1 = total - n0;
    if (n0 == 0 || n1 == 0) {
      continue;
    }
    const double w0 = static_cast<double>(n0) / n;
    const double w1 = static_cast<double>(n1) / n;
    const double mu0 = static_cast<double>(s0) / static_cast<double>(n0);
    const double mu1 = static_cast<double>(total_sum - s0) / static_cast<double>(n1);
    const double between = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
    if (between > best) {
      best = between;
      best_t = t;
    }
  }
  return static_cast<std::uint8_t>(best_t);
}

OtsuResult threshold_otsu(const GrayImage& img) {
  std::array<std::uint64_t, 256> hist{};
  for (const std::uint8_t v : img.data()) {
    ++hist[v];
  }
  const std::uint8_t t = otsu_threshold(hist);
  return {threshold_fixed(img, t), t};
}

GrayImage to_luma(const RgbImage& img) {
  GrayImage out(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i) {
    const Rgb px = img[i];
    out[i] = static_cast<std::uint8_t>((299u * px.r + 587u * px.g + 114u * px.b + 500u) / 1000u);
  }
  return out;
}

}  // namespace neuroseg
