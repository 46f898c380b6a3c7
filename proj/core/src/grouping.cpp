#include "nlhd/grouping.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace nlhd {

void MatchParams::validate() const {
  auto fail = [](const std::string& msg) { throw ParameterError("MatchParams: " + msg); };
  if (patch_side < 1) fail("patch_side must be >= 1");
  if (num_blocks < 1 || !is_power_of_two(static_cast<std::size_t>(num_blocks))) {
    fail("num_blocks must be a power of two");
  }
  if (num_rows < 1 || !is_power_of_two(static_cast<std::size_t>(num_rows))) {
    fail("num_rows must be a power of two");
  }
  if (num_rows > patch_pixels()) fail("num_rows exceeds patch_side^2");
  if (step < 1) fail("step must be >= 1");
  if (search_radius < patch_side) fail("search_radius must be >= patch_side");
}

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

std::size_t floor_power_of_two(std::size_t n) noexcept {
  if (n == 0) return 0;
  std::size_t p = 1;
  while (p <= n / 2) p *= 2;
  return p;
}

namespace {

double block_mean(const ImagePlane& plane, BlockOrigin o, int side) {
  double sum = 0.0;
  for (int dy = 0; dy < side; ++dy) {
    for (int dx = 0; dx < side; ++dx) {
      sum += plane(o.y + dy, o.x + dx);
    }
  }
  return sum / static_cast<double>(side * side);
}

void require_fits(const ImagePlane& plane, BlockOrigin o, int side, const char* fn) {
  if (o.y < 0 || o.x < 0 || o.y + side > static_cast<int>(plane.height()) ||
      o.x + side > static_cast<int>(plane.width())) {
    throw ParameterError(std::string(fn) + ": block at (" + std::to_string(o.y) + "," +
                         std::to_string(o.x) + ") does not fit in the image");
  }
}

}  // namespace

Channel select_matching_channel(const ImageRGB& img, BlockOrigin origin, int patch_side) {
  require_fits(img.r(), origin, patch_side, "select_matching_channel");
  Channel best = Channel::R;
  double best_mean = block_mean(img.r(), origin, patch_side);
  for (Channel c : {Channel::G, Channel::B}) {
    const double m = block_mean(img.channel(c), origin, patch_side);
    if (m > best_mean) {
      best_mean = m;
      best = c;
    }
  }
  return best;
}

double block_distance(const ImagePlane& plane, BlockOrigin a, BlockOrigin b, int patch_side) {
  const auto data = plane.values();
  const std::size_t w = plane.width();
  double sum = 0.0;
  for (int dy = 0; dy < patch_side; ++dy) {
    const double* ra = data.data() + static_cast<std::size_t>(a.y + dy) * w + static_cast<std::size_t>(a.x);
    const double* rb = data.data() + static_cast<std::size_t>(b.y + dy) * w + static_cast<std::size_t>(b.x);
    for (int dx = 0; dx < patch_side; ++dx) {
      const double d = ra[dx] - rb[dx];
      sum += d * d;
    }
  }
  return sum;
}

std::vector<BlockOrigin> block_match(const ImagePlane& plane, BlockOrigin ref,
                                     const MatchParams& params) {
  const int side = params.patch_side;
  require_fits(plane, ref, side, "block_match");

  const int max_y = static_cast<int>(plane.height()) - side;
  const int max_x = static_cast<int>(plane.width()) - side;
  const int y0 = std::max(0, ref.y - params.search_radius);
  const int y1 = std::min(max_y, ref.y + params.search_radius);
  const int x0 = std::max(0, ref.x - params.search_radius);
  const int x1 = std::min(max_x, ref.x + params.search_radius);

  struct Candidate {
    double distance;
    int scan;  // row-major index within the window
    BlockOrigin origin;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(static_cast<std::size_t>((y1 - y0 + 1) * (x1 - x0 + 1)));
  int scan = 0;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x, ++scan) {
      const BlockOrigin o{y, x};
      if (o == ref) continue;
      candidates.push_back({block_distance(plane, ref, o, side), scan, o});
    }
  }

  const std::size_t available = candidates.size() + 1;
  const std::size_t keep =
      floor_power_of_two(std::min<std::size_t>(static_cast<std::size_t>(params.num_blocks), available));

  auto closer = [](const Candidate& a, const Candidate& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.scan < b.scan;
  };
  const auto mid = candidates.begin() + static_cast<std::ptrdiff_t>(keep - 1);
  std::partial_sort(candidates.begin(), mid, candidates.end(), closer);

  std::vector<BlockOrigin> out;
  out.reserve(keep);
  out.push_back(ref);
  for (auto it = candidates.begin(); it != mid; ++it) out.push_back(it->origin);
  return out;
}

BlockGroup extract_block_group(const ImagePlane& plane, std::span<const BlockOrigin> origins,
                               int patch_side, Channel channel) {
  BlockGroup group;
  group.patch_side = patch_side;
  group.channel = channel;
  group.origins.assign(origins.begin(), origins.end());
  const auto n = static_cast<std::size_t>(patch_side * patch_side);
  group.stack = Matrix(n, origins.size());
  for (std::size_t col = 0; col < origins.size(); ++col) {
    require_fits(plane, origins[col], patch_side, "extract_block_group");
    for (std::size_t row = 0; row < n; ++row) {
      const auto p = group.pixel(row, col);
      group.stack(row, col) = plane(p.y, p.x);
    }
  }
  return group;
}

std::array<BlockGroup, 3> extract_block_groups(const ImageRGB& img,
                                               std::span<const BlockOrigin> origins,
                                               int patch_side) {
  return {extract_block_group(img.r(), origins, patch_side, Channel::R),
          extract_block_group(img.g(), origins, patch_side, Channel::G),
          extract_block_group(img.b(), origins, patch_side, Channel::B)};
}

namespace {

double squared_row_distance(const Matrix& stack, std::size_t i, std::size_t j) {
  const auto a = stack.row(i);
  const auto b = stack.row(j);
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    sum += d * d;
  }
  return sum;
}

}  // namespace

RowDistanceTable::RowDistanceTable(const Matrix& stack) : n_(stack.rows()), squared_(n_ * n_, 0.0) {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double d = squared_row_distance(stack, i, j);
      squared_[i * n_ + j] = d;
      squared_[j * n_ + i] = d;
    }
  }
}

std::vector<double> squared_row_distances(const Matrix& stack, std::size_t ref) {
  std::vector<double> out(stack.rows(), 0.0);
  for (std::size_t j = 0; j < stack.rows(); ++j) {
    if (j != ref) out[j] = squared_row_distance(stack, std::min(ref, j), std::max(ref, j));
  }
  return out;
}

RowSelection select_similar_rows(std::span<const double> squared_to_ref, int ref_row,
                                 int num_rows) {
  const int n = static_cast<int>(squared_to_ref.size());
  if (ref_row < 0 || ref_row >= n) {
    throw ParameterError("select_similar_rows: reference row out of range");
  }
  if (num_rows < 1 || num_rows > n) {
    throw ParameterError("select_similar_rows: num_rows must be in [1, row count]");
  }

  std::vector<int> others;
  others.reserve(static_cast<std::size_t>(n - 1));
  for (int j = 0; j < n; ++j) {
    if (j != ref_row) others.push_back(j);
  }
  auto closer = [&](int a, int b) {
    const double da = squared_to_ref[static_cast<std::size_t>(a)];
    const double db = squared_to_ref[static_cast<std::size_t>(b)];
    if (da != db) return da < db;
    return a < b;
  };

  RowSelection sel;
  if (!others.empty()) {
    const auto best = std::min_element(others.begin(), others.end(), closer);
    sel.min_distance = std::sqrt(squared_to_ref[static_cast<std::size_t>(*best)]);
  }
  const auto mid = others.begin() + (num_rows - 1);
  std::partial_sort(others.begin(), mid, others.end(), closer);

  sel.rows.reserve(static_cast<std::size_t>(num_rows));
  sel.rows.push_back(ref_row);
  sel.rows.insert(sel.rows.end(), others.begin(), mid);
  return sel;
}

Matrix gather_rows(const Matrix& stack, std::span<const int> rows) {
  Matrix out(rows.size(), stack.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto src = stack.row(static_cast<std::size_t>(rows[r]));
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

RowMatch row_match(const BlockGroup& blocks, int ref_row, int num_rows) {
  if (ref_row < 0 || static_cast<std::size_t>(ref_row) >= blocks.rows()) {
    throw ParameterError("row_match: reference row out of range");
  }
  const auto dist = squared_row_distances(blocks.stack, static_cast<std::size_t>(ref_row));
  auto sel = select_similar_rows(dist, ref_row, num_rows);
  RowMatch out;
  out.group.values = gather_rows(blocks.stack, sel.rows);
  out.group.rows = std::move(sel.rows);
  out.group.reference_row = ref_row;
  out.min_distance = sel.min_distance;
  return out;
}

std::vector<int> reference_offsets(std::size_t extent, int patch_side, int step) {
  if (patch_side < 1 || step < 1) {
    throw ParameterError("reference_offsets: patch_side and step must be >= 1");
  }
  if (extent < static_cast<std::size_t>(patch_side)) {
    throw ParameterError("image dimension " + std::to_string(extent) +
                         " is smaller than the block side " + std::to_string(patch_side));
  }
  const int last = static_cast<int>(extent) - patch_side;
  std::vector<int> out;
  for (int o = 0; o <= last; o += step) out.push_back(o);
  if (out.back() != last) out.push_back(last);
  return out;
}

std::vector<BlockOrigin> reference_positions(std::size_t height, std::size_t width,
                                             const MatchParams& params) {
  const auto ys = reference_offsets(height, params.patch_side, params.step);
  const auto xs = reference_offsets(width, params.patch_side, params.step);
  std::vector<BlockOrigin> out;
  out.reserve(ys.size() * xs.size());
  for (int y : ys) {
    for (int x : xs) out.push_back({y, x});
  }
  return out;
}

}  // namespace nlhd
