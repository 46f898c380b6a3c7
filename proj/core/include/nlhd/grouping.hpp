#pragma once

#include <array>
#include <compare>
#include <span>
#include <stdexcept>
#include <vector>

#include "nlhd/image.hpp"
#include "nlhd/matrix.hpp"

namespace nlhd {

class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Block- and row-matching parameters for one grouping pass.
struct MatchParams {
  int patch_side = 6;     // block side length in pixels
  int num_blocks = 8;     // blocks per group (power of two)
  int num_rows = 2;       // rows per similar pixel group (power of two)
  int step = 6;           // stride between reference blocks
  int search_radius = 13; // block-matching window radius around the reference

  int patch_pixels() const noexcept { return patch_side * patch_side; }

  /// Throws ParameterError if any invariant is violated.
  void validate() const;

  friend bool operator==(const MatchParams&, const MatchParams&) = default;
};

struct BlockOrigin {
  int y = 0;
  int x = 0;
  friend auto operator<=>(const BlockOrigin&, const BlockOrigin&) = default;
};

bool is_power_of_two(std::size_t n) noexcept;
std::size_t floor_power_of_two(std::size_t n) noexcept;

/// Channel whose block at `origin` has the largest mean. Ties go to R, then G.
Channel select_matching_channel(const ImageRGB& img, BlockOrigin origin, int patch_side);

/// Squared Euclidean distance between two blocks of the same plane.
double block_distance(const ImagePlane& plane, BlockOrigin a, BlockOrigin b, int patch_side);

/// The most similar blocks to the one at `ref` inside the search window.
///
/// The window holds every origin within `search_radius` of `ref` on both axes
/// whose block fits in the plane. The reference always comes first; the rest
/// are ordered by squared distance, ties by row-major scan order. Returns
/// num_blocks origins, or the largest power of two that fits when the window
/// holds fewer candidates.
std::vector<BlockOrigin> block_match(const ImagePlane& plane, BlockOrigin ref,
                                     const MatchParams& params);

/// Blocks of one channel stacked as columns.
///
/// Row p of `stack` is pixel p of each block in column-major order, i.e.
/// (dy, dx) = (p % side, p / side).
struct BlockGroup {
  Matrix stack;
  std::vector<BlockOrigin> origins;
  Channel channel = Channel::R;
  int patch_side = 0;

  std::size_t rows() const noexcept { return stack.rows(); }
  std::size_t cols() const noexcept { return stack.cols(); }

  /// Source pixel of stack(row, col).
  BlockOrigin pixel(std::size_t row, std::size_t col) const noexcept {
    const auto& o = origins[col];
    return {o.y + static_cast<int>(row) % patch_side, o.x + static_cast<int>(row) / patch_side};
  }
};

BlockGroup extract_block_group(const ImagePlane& plane, std::span<const BlockOrigin> origins,
                               int patch_side, Channel channel);

/// One BlockGroup per channel, all sharing the same origins.
std::array<BlockGroup, 3> extract_block_groups(const ImageRGB& img,
                                               std::span<const BlockOrigin> origins,
                                               int patch_side);

/// N3 x N2 matrix of matched rows. rows[0] == reference_row.
struct SimilarPixelGroup {
  Matrix values;
  std::vector<int> rows;
  int reference_row = 0;
};

struct RowSelection {
  std::vector<int> rows;     // reference first, then by (distance, index)
  double min_distance = 0.0; // smallest Euclidean distance to a non-reference row
};

/// Pairwise squared Euclidean distances between the rows of a block stack.
class RowDistanceTable {
public:
  explicit RowDistanceTable(const Matrix& stack);

  std::size_t size() const noexcept { return n_; }
  std::span<const double> squared_from(std::size_t row) const noexcept {
    return {squared_.data() + row * n_, n_};
  }

private:
  std::size_t n_ = 0;
  std::vector<double> squared_;
};

/// Squared distances from row `ref` to every row of `stack`.
std::vector<double> squared_row_distances(const Matrix& stack, std::size_t ref);

/// Picks the reference plus the num_rows - 1 nearest other rows.
RowSelection select_similar_rows(std::span<const double> squared_to_ref, int ref_row,
                                 int num_rows);

struct RowMatch {
  SimilarPixelGroup group;
  double min_distance = 0.0;
};

RowMatch row_match(const BlockGroup& blocks, int ref_row, int num_rows);

/// Gathers the given rows of a block stack into a group matrix.
Matrix gather_rows(const Matrix& stack, std::span<const int> rows);

/// Reference block origins: multiples of `step` on each axis plus a final
/// origin flush with the far border. Row-major order. Throws ParameterError if
/// the image is smaller than one block.
std::vector<BlockOrigin> reference_positions(std::size_t height, std::size_t width,
                                             const MatchParams& params);

/// 1-D helper behind reference_positions.
std::vector<int> reference_offsets(std::size_t extent, int patch_side, int step);

}  // namespace nlhd
