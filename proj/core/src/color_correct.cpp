#include "nlhd/color_correct.hpp"

#include <algorithm>
#include <cmath>

#include "aggregation.hpp"
#include "nlhd/color.hpp"
#include "parallel.hpp"

namespace nlhd {

void ColorCorrectParams::validate() const {
  if (!(k > 0.0)) throw ParameterError("ColorCorrectParams: k must be positive");
  if (!(alpha >= 1.0)) throw ParameterError("ColorCorrectParams: alpha must be >= 1");
  if (!(epsilon > 0.0)) throw ParameterError("ColorCorrectParams: epsilon must be positive");
}

DeviationStats compute_color_deviation(const ImageRGB& img) {
  const auto lab = rgb_to_lab(img);
  DeviationStats s;
  s.mean_a = lab.a.mean();
  s.mean_b = lab.b.mean();
  s.magnitude = std::hypot(s.mean_a, s.mean_b);
  return s;
}

double compute_saturation_gamma(double deviation, double mean_r, double mean_g, double mean_b,
                                const ColorCorrectParams& params) {
  const double min_m = std::min({mean_r, mean_g, mean_b});
  const double mu = (mean_r + mean_g + mean_b) / 3.0;
  const double var =
      ((mean_r - mu) * (mean_r - mu) + (mean_g - mu) * (mean_g - mu) + (mean_b - mu) * (mean_b - mu)) / 3.0;
  const double std_m = std::sqrt(var);
  const double denom = std::max(min_m + std_m + params.epsilon, params.epsilon);
  const double gamma = 1.0 + params.k * std::max(deviation, 0.0) / denom;
  return std::clamp(gamma, 1.0, params.alpha);
}

ImageRGB correct_saturation(const ImageRGB& img, double deviation,
                            const ColorCorrectParams& params, const GroupProvenance& provenance,
                            int threads) {
  params.validate();
  if (provenance.empty()) {
    throw ParameterError("correct_saturation: missing group provenance");
  }
  if (provenance.height != img.height() || provenance.width != img.width()) {
    throw ParameterError("correct_saturation: provenance was recorded on a different image size");
  }

  auto hsv = rgb_to_hsv(img);
  const int side = provenance.params.patch_side;
  AggregationBuffer buffer(img.height(), img.width());

  detail::ordered_parallel_map(
      provenance.positions.size(), threads,
      [&](std::size_t i) {
        const auto& pos = provenance.positions[i];
        detail::PatchStackAccumulator acc(pos.origins, side);
        const std::size_t patch_pixels = static_cast<std::size_t>(side * side);
        for (std::size_t ref_row = 0; ref_row < patch_pixels; ++ref_row) {
          const auto rows = pos.group_rows(ref_row);
          double sum_r = 0.0, sum_g = 0.0, sum_b = 0.0;
          for (int row : rows) {
            for (const auto& o : pos.origins) {
              const auto y = static_cast<std::size_t>(o.y + row % side);
              const auto x = static_cast<std::size_t>(o.x + row / side);
              sum_r += img.r()(y, x);
              sum_g += img.g()(y, x);
              sum_b += img.b()(y, x);
            }
          }
          const double n = static_cast<double>(rows.size() * pos.origins.size());
          const double gamma =
              compute_saturation_gamma(deviation, sum_r / n, sum_g / n, sum_b / n, params);
          for (int row : rows) {
            for (std::size_t col = 0; col < pos.origins.size(); ++col) {
              const auto& o = pos.origins[col];
              const double s = hsv.s(static_cast<std::size_t>(o.y + row % side),
                                     static_cast<std::size_t>(o.x + row / side));
              acc.add(static_cast<std::size_t>(row), col, gamma == 1.0 ? s : std::pow(s, gamma));
            }
          }
        }
        return acc;
      },
      [&](std::size_t, detail::PatchStackAccumulator&& acc) { acc.merge_into(buffer); });

  hsv.s = buffer.resolve();
  return hsv_to_rgb(hsv);
}

}  // namespace nlhd
