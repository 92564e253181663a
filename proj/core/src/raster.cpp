#include "neuroseg/raster.hpp"

#include <algorithm>

namespace neuroseg {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::CorruptData: return "CorruptData";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::DegenerateHistogram: return "DegenerateHistogram";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ClassMismatch: return "ClassMismatch";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::DuplicateCoordinate: return "DuplicateCoordinate";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::MismatchedPointFile: return "MismatchedPointFile";
    case ErrorCode::InvalidCounts: return "InvalidCounts";
    case ErrorCode::EmptyUnion: return "EmptyUnion";
    case ErrorCode::DegenerateAgreement: return "DegenerateAgreement";
    case ErrorCode::NoNegatives: return "NoNegatives";
    case ErrorCode::NoPositives: return "NoPositives";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

BinaryMask::BinaryMask(Raster<std::uint8_t> bits, PositiveClass positive)
    : bits_(std::move(bits)), positive_(positive) {
  for (auto& b : bits_.data()) {
    b = b != 0 ? 1 : 0;
  }
}

std::size_t BinaryMask::count() const noexcept {
  const auto d = bits_.data();
  return static_cast<std::size_t>(std::count(d.begin(), d.end(), std::uint8_t{1}));
}

bool BinaryMask::subset_of(const BinaryMask& other) const {
  if (width() != other.width() || height() != other.height()) {
    throw Error(ErrorCode::DimensionMismatch, "subset_of on rasters of different size");
  }
  for (std::size_t i = 0; i < size(); ++i) {
    if (get(i) && !other.get(i)) {
      return false;
    }
  }
  return true;
}

GrayImage BinaryMask::to_gray() const {
  GrayImage out(width(), height());
  for (std::size_t i = 0; i < size(); ++i) {
    out[i] = get(i) ? 255 : 0;
  }
  return out;
}

BinaryMask mask_from_gray(const GrayImage& img, PositiveClass positive) {
  BinaryMask mask(img.width(), img.height(), positive);
  for (std::size_t i = 0; i < img.size(); ++i) {
    mask.set(i, img[i] >= 128);
  }
  return mask;
}

BinaryMask label_union(const LabelImage& labels) {
  BinaryMask mask(labels.width(), labels.height(), PositiveClass::Neuron);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    mask.set(i, labels[i] != 0);
  }
  return mask;
}

}  // namespace neuroseg
