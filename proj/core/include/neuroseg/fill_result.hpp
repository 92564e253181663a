#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "neuroseg/raster.hpp"

namespace neuroseg {

enum class Connectivity { Four = 4, Eight = 8 };

/// Outcome of growing every click-point of a slice. Each input id ends up in
/// exactly one place: the label raster, `leaked_ids`, or `missed_ids`.
struct FillResult {
  LabelImage labels;
  std::vector<std::uint32_t> leaked_ids;
  std::vector<std::uint32_t> missed_ids;
};

/// `{"leaked": [...], "missed": [...]}`
std::string fill_report_json(const FillResult& result);

}  // namespace neuroseg
