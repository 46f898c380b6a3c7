#pragma once

#include <span>
#include <vector>

#include "nlhd/decompose.hpp"
#include "nlhd/grouping.hpp"

namespace nlhd::detail {

/// Per-reference-position accumulator laid out like a block stack:
/// entry (row, col) is pixel `row` of block `col`. Filled by one worker, then
/// merged into the image-sized buffer in reference-position order.
class PatchStackAccumulator {
public:
  PatchStackAccumulator() = default;
  PatchStackAccumulator(std::span<const BlockOrigin> origins, int patch_side)
      : origins_(origins.begin(), origins.end()),
        side_(patch_side),
        pixels_(static_cast<std::size_t>(patch_side * patch_side)),
        values_(pixels_ * origins.size(), 0.0),
        counts_(pixels_ * origins.size(), 0.0) {}

  void add(std::size_t row, std::size_t col, double value) {
    const std::size_t i = col * pixels_ + row;
    values_[i] += value;
    counts_[i] += 1.0;
  }

  void merge_into(AggregationBuffer& buffer) const {
    for (std::size_t col = 0; col < origins_.size(); ++col) {
      const auto& o = origins_[col];
      for (std::size_t row = 0; row < pixels_; ++row) {
        const std::size_t i = col * pixels_ + row;
        if (counts_[i] == 0.0) continue;
        const int y = o.y + static_cast<int>(row) % side_;
        const int x = o.x + static_cast<int>(row) / side_;
        buffer.add(static_cast<std::size_t>(y), static_cast<std::size_t>(x), values_[i], counts_[i]);
      }
    }
  }

private:
  std::vector<BlockOrigin> origins_;
  int side_ = 0;
  std::size_t pixels_ = 0;
  std::vector<double> values_;
  std::vector<double> counts_;
};

}  // namespace nlhd::detail
