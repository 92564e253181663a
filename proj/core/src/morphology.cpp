#include "neuroseg/morphology.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace neuroseg {
namespace {

void require_border(const BinaryMask& mask, const char* op) {
  if (mask.positive_class() != PositiveClass::Border) {
    throw Error(ErrorCode::ClassMismatch, std::string(op) + " expects a Border mask");
  }
}

// Half-width of each disk row, indexed by dy + radius.
std::vector<int> row_half_widths(const StructuringElement& se) {
  const int r = se.radius();
  std::vector<int> hw(static_cast<std::size_t>(2 * r + 1), -1);
  for (const Offset& o : se.offsets()) {
    auto& v = hw[static_cast<std::size_t>(o.dy + r)];
    v = std::max(v, std::abs(o.dx));
  }
  return hw;
}

// Per-row prefix counts of true pixels: prefix[y * (w + 1) + x] = #true in [0, x).
std::vector<std::uint32_t> row_prefix(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<std::uint32_t> prefix(static_cast<std::size_t>(w + 1) * static_cast<std::size_t>(h), 0);
  for (int y = 0; y < h; ++y) {
    std::uint32_t* row = prefix.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(w + 1);
    for (int x = 0; x < w; ++x) {
      row[x + 1] = row[x] + (mask.get(x, y) ? 1u : 0u);
    }
  }
  return prefix;
}

// Shared span walk. For each pixel the disk is split into row spans, each
// clipped to the raster. Dilation asks "any true in some span"; erosion asks
// "every clipped span full".
template <bool Erode>
BinaryMask morph(const BinaryMask& mask, const StructuringElement& se) {
  const int w = mask.width();
  const int h = mask.height();
  const int r = se.radius();
  const auto hw = row_half_widths(se);
  const auto prefix = row_prefix(mask);
  BinaryMask out(w, h, mask.positive_class());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      bool result = Erode;
      for (int dy = -r; dy <= r && result == Erode; ++dy) {
        const int k = hw[static_cast<std::size_t>(dy + r)];
        const int yy = y + dy;
        if (k < 0 || yy < 0 || yy >= h) continue;
        const int x0 = std::max(0, x - k);
        const int x1 = std::min(w - 1, x + k);
        const std::uint32_t* row = prefix.data() + static_cast<std::size_t>(yy) * static_cast<std::size_t>(w + 1);
        const std::uint32_t trues = row[x1 + 1] - row[x0];
        if constexpr (Erode) {
          result = trues == static_cast<std::uint32_t>(x1 - x0 + 1);
        } else {
          result = trues > 0;
        }
      }
      out.set(x, y, result);
    }
  }
  return out;
}

}  // namespace

StructuringElement StructuringElement::disk(int radius) {
  if (radius < 1) {
    throw Error(ErrorCode::InvalidArgument, "structuring element radius must be >= 1");
  }
  std::vector<Offset> offsets;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      if (dx * dx + dy * dy <= radius * (radius + 1)) {
        offsets.push_back({dx, dy});
      }
    }
  }
  return {radius, std::move(offsets)};
}

BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se) { return morph<false>(mask, se); }

BinaryMask erode(const BinaryMask& mask, const StructuringElement& se) { return morph<true>(mask, se); }

BinaryMask close(const BinaryMask& mask, const StructuringElement& se) {
  require_border(mask, "close");
  return erode(dilate(mask, se), se);
}

BinaryMask skeletonize(const BinaryMask& mask) {
  require_border(mask, "skeletonize");
  const int w = mask.width();
  const int h = mask.height();
  BinaryMask out = mask;
  auto at = [&](int x, int y) -> int { return out.contains(x, y) && out.get(x, y) ? 1 : 0; };

  // Only pixels with a false 8-neighbour can ever be deleted, so the scan
  // is restricted to the current contour.
  std::vector<std::uint8_t> on_contour(out.size(), 0);
  std::vector<std::size_t> contour;
  auto touches_background = [&](int x, int y) {
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx)
        if ((dx != 0 || dy != 0) && at(x + dx, y + dy) == 0) return true;
    return false;
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (out.get(x, y) && touches_background(x, y)) {
        on_contour[out.index(x, y)] = 1;
        contour.push_back(out.index(x, y));
      }
    }
  }

  std::vector<std::size_t> doomed;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int pass = 0; pass < 2; ++pass) {
      doomed.clear();
      for (const std::size_t i : contour) {
        const int x = static_cast<int>(i % static_cast<std::size_t>(w));
        const int y = static_cast<int>(i / static_cast<std::size_t>(w));
        // p2..p9 clockwise from north
        const std::array<int, 8> p = {at(x, y - 1),     at(x + 1, y - 1), at(x + 1, y), at(x + 1, y + 1),
                                      at(x, y + 1),     at(x - 1, y + 1), at(x - 1, y), at(x - 1, y - 1)};
        int b = 0;
        int a = 0;
        for (int k = 0; k < 8; ++k) {
          b += p[k];
          a += (p[k] == 0 && p[(k + 1) % 8] == 1) ? 1 : 0;
        }
        if (b < 2 || b > 6 || a != 1) continue;
        const int p2 = p[0], p4 = p[2], p6 = p[4], p8 = p[6];
        const bool ok = pass == 0 ? (p2 * p4 * p6 == 0 && p4 * p6 * p8 == 0) : (p2 * p4 * p8 == 0 && p2 * p6 * p8 == 0);
        if (ok) doomed.push_back(i);
      }
      if (doomed.empty()) continue;
      changed = true;
      for (const std::size_t i : doomed) {
        out.set(i, false);
        on_contour[i] = 0;
      }
      for (const std::size_t i : doomed) {
        const int x = static_cast<int>(i % static_cast<std::size_t>(w));
        const int y = static_cast<int>(i / static_cast<std::size_t>(w));
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (at(x + dx, y + dy) == 0) continue;
            const std::size_t j = out.index(x + dx, y + dy);
            if (!on_contour[j]) {
              on_contour[j] = 1;
              contour.push_back(j);
            }
          }
        }
      }
      std::erase_if(contour, [&](std::size_t i) { return !out.get(i); });
    }
  }
  return out;
}

}  // namespace neuroseg
