#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace neuroseg {

enum class ErrorCode {
  // raster / image I/O
  MissingFile,
  UnsupportedFormat,
  CorruptData,
  IoFailure,
  DegenerateHistogram,
  DimensionMismatch,
  ClassMismatch,
  // click-points
  SchemaViolation,
  DuplicateCoordinate,
  DuplicateId,
  OutOfBounds,
  // augmentation
  MismatchedPointFile,
  // metrics
  InvalidCounts,
  EmptyUnion,
  DegenerateAgreement,
  NoNegatives,
  NoPositives,
  // generic precondition failure
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure surfaced by the library carries a stable code so callers
/// (the CLI in particular) can map it to an exit status without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace neuroseg
