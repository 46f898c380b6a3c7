#include "nlhd/denoise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "aggregation.hpp"
#include "parallel.hpp"

namespace nlhd {

void DenoiseParams::validate() const {
  match.validate();
  if (!(k > 0.0)) throw ParameterError("DenoiseParams: k must be positive");
  if (!(epsilon > 0.0)) throw ParameterError("DenoiseParams: epsilon must be positive");
  if (passes < 1) throw ParameterError("DenoiseParams: passes must be >= 1");
}

double estimate_sigma(std::span<const double> min_distances) {
  if (min_distances.empty()) return 0.0;
  double sum = 0.0;
  for (double d : min_distances) sum += d * d;
  return std::sqrt(sum / static_cast<double>(min_distances.size()));
}

double estimate_sigma_d(std::span<const double> min_distances) {
  if (min_distances.empty()) return 0.0;
  const double mean = std::accumulate(min_distances.begin(), min_distances.end(), 0.0) /
                      static_cast<double>(min_distances.size());
  double sum = 0.0;
  for (double d : min_distances) sum += (d - mean) * (d - mean);
  return std::sqrt(sum);
}

double compute_threshold(const NoiseStats& stats, const DenoiseParams& params) {
  const double mean_term = std::max(stats.group_mean, params.epsilon);
  const double spread_term = std::max(params.k * stats.sigma_d, params.epsilon);
  return stats.sigma / (mean_term * spread_term);
}

HaarSpectrum hard_threshold(HaarSpectrum spectrum, double threshold) {
  Matrix& c = spectrum.coefficients();
  for (std::size_t r = 0; r < c.rows(); ++r) {
    for (std::size_t col = 0; col < c.cols(); ++col) {
      if (r == 0 && col == 0) continue;
      if (std::abs(c(r, col)) < threshold) c(r, col) = 0.0;
    }
  }
  for (std::size_t r = 1; r < c.rows(); ++r) {
    double sq = 0.0;
    for (double v : c.row(r)) sq += v * v;
    const double rms = std::sqrt(sq / static_cast<double>(c.cols()));
    if (rms < threshold) std::fill(c.row(r).begin(), c.row(r).end(), 0.0);
  }
  return spectrum;
}

namespace {

using ChannelAccumulators = std::array<detail::PatchStackAccumulator, 3>;

ChannelAccumulators denoise_position(const ImageRGB& img, const DenoiseParams& params,
                                     BlockOrigin ref) {
  const MatchParams& mp = params.match;
  const Channel matching = select_matching_channel(img, ref, mp.patch_side);
  const auto origins = block_match(img.channel(matching), ref, mp);
  const auto blocks = extract_block_groups(img, origins, mp.patch_side);

  ChannelAccumulators accs;
  std::vector<RowSelection> selections;
  std::vector<double> min_distances;

  for (std::size_t c = 0; c < 3; ++c) {
    const Matrix& stack = blocks[c].stack;
    auto& acc = accs[c];
    acc = detail::PatchStackAccumulator(origins, mp.patch_side);
    const RowDistanceTable table(stack);

    selections.clear();
    min_distances.clear();
    for (std::size_t row = 0; row < stack.rows(); ++row) {
      selections.push_back(
          select_similar_rows(table.squared_from(row), static_cast<int>(row), mp.num_rows));
      min_distances.push_back(selections.back().min_distance);
    }

    NoiseStats stats;
    stats.sigma = estimate_sigma(min_distances);
    stats.sigma_d = estimate_sigma_d(min_distances);

    for (const auto& sel : selections) {
      const Matrix group = gather_rows(stack, sel.rows);
      stats.group_mean = group.mean();
      const double threshold = compute_threshold(stats, params);
      const Matrix filtered = haar_inverse(hard_threshold(haar_forward(group), threshold));
      for (std::size_t r = 0; r < sel.rows.size(); ++r) {
        for (std::size_t col = 0; col < filtered.cols(); ++col) {
          acc.add(static_cast<std::size_t>(sel.rows[r]), col, filtered(r, col));
        }
      }
    }
  }
  return accs;
}

}  // namespace

ImageRGB denoise_pass(const ImageRGB& img, const DenoiseParams& params, int threads) {
  params.validate();
  if (img.empty()) throw ImageError("denoise_pass: empty image");
  const auto positions = reference_positions(img.height(), img.width(), params.match);

  std::array<AggregationBuffer, 3> buffers{AggregationBuffer(img.height(), img.width()),
                                           AggregationBuffer(img.height(), img.width()),
                                           AggregationBuffer(img.height(), img.width())};
  detail::ordered_parallel_map(
      positions.size(), threads,
      [&](std::size_t i) { return denoise_position(img, params, positions[i]); },
      [&](std::size_t, ChannelAccumulators&& accs) {
        for (std::size_t c = 0; c < 3; ++c) accs[c].merge_into(buffers[c]);
      });
  return ImageRGB(buffers[0].resolve(), buffers[1].resolve(), buffers[2].resolve());
}

ImageRGB denoise(const ImageRGB& img, const DenoiseParams& params, int threads) {
  params.validate();
  ImageRGB current = denoise_pass(img, params, threads);
  for (int pass = 1; pass < params.passes; ++pass) {
    current = denoise_pass(current, params, threads);
  }
  return current;
}

}  // namespace nlhd
