#pragma once

#include <array>
#include <span>
#include <vector>

#include "nlhd/grouping.hpp"
#include "nlhd/image.hpp"

namespace nlhd {

/// Sum of contributions and their weights per pixel; resolve() divides.
class AggregationBuffer {
public:
  AggregationBuffer(std::size_t height, std::size_t width)
      : value_(height, width, 0.0), weight_(height, width, 0.0) {}

  void add(std::size_t y, std::size_t x, double value, double weight = 1.0) {
    value_(y, x) += value;
    weight_(y, x) += weight;
  }

  const ImagePlane& value() const noexcept { return value_; }
  const ImagePlane& weight() const noexcept { return weight_; }

  /// value / weight. Throws ImageError if some pixel never received a weight.
  ImagePlane resolve() const;

private:
  ImagePlane value_;
  ImagePlane weight_;
};

/// Matching results of one reference position, in the matching channel.
struct PositionGroups {
  BlockOrigin reference;
  Channel channel = Channel::R;
  std::vector<BlockOrigin> origins;
  int num_rows = 0;
  /// patch_pixels x num_rows, row-major: entries [i*num_rows, (i+1)*num_rows)
  /// are the block-stack rows grouped with reference row i.
  std::vector<int> rows;

  std::span<const int> group_rows(std::size_t ref_row) const noexcept {
    return {rows.data() + ref_row * static_cast<std::size_t>(num_rows),
            static_cast<std::size_t>(num_rows)};
  }
};

/// Block- and row-matching indices recorded during a decomposition pass, so a
/// later stage can rebuild the same similar pixel groups on another plane.
struct GroupProvenance {
  std::size_t height = 0;
  std::size_t width = 0;
  MatchParams params;
  std::vector<PositionGroups> positions;

  bool empty() const noexcept { return positions.empty(); }
};

enum class PassMode { Low, High };

struct DecomposeOptions {
  /// Apply |.| to the red reflectance operand as well when fusing.
  bool abs_all_reflectance = false;
  /// Worker threads; 0 picks the hardware concurrency.
  int threads = 1;
};

/// One grouping + Haar pass over the image.
///
/// Each reference block picks its matching channel, is block-matched in that
/// channel, and the three channel stacks are row-matched with every stack row
/// serving once as the reference row. Each group is reconstructed from its DC
/// coefficient (Low) or from everything else (High) and written back to its
/// source pixels; overlapping estimates are averaged with unit weights.
///
/// The result is bitwise identical for any thread count. When `provenance` is
/// non-null it receives the matching-channel groups of every position.
std::array<ImagePlane, 3> decompose_pass(const ImageRGB& img, const MatchParams& params,
                                         PassMode mode, int threads = 1,
                                         GroupProvenance* provenance = nullptr);

/// Block- and row-matching of an illumination-style pass without any
/// transform. Produces the same provenance decompose_pass records.
GroupProvenance match_groups(const ImageRGB& img, const MatchParams& params, int threads = 1);

struct DecompositionResult {
  std::array<ImagePlane, 3> illumination;  // per channel R, G, B
  std::array<ImagePlane, 3> reflectance;   // per channel R, G, B
  ImagePlane fused_illumination;
  ImagePlane fused_reflectance;
};

/// Low pass with `illum`, high pass with `refl`, then channel fusion.
/// `provenance`, if given, records the illumination pass.
DecompositionResult decompose(const ImageRGB& img, const MatchParams& illum,
                              const MatchParams& refl, const DecomposeOptions& options = {},
                              GroupProvenance* provenance = nullptr);

/// Pixelwise max of the three illumination planes.
ImagePlane fuse_illumination(const ImagePlane& r, const ImagePlane& g, const ImagePlane& b);

/// Pixelwise min(r, |g|, |b|); with abs_all, min(|r|, |g|, |b|).
ImagePlane fuse_reflectance(const ImagePlane& r, const ImagePlane& g, const ImagePlane& b,
                            bool abs_all = false);

/// clamp(v + 0.5, 0, 1), for viewing a signed reflectance plane.
ImagePlane reflectance_for_display(const ImagePlane& reflectance);

}  // namespace nlhd
