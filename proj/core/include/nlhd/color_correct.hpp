#pragma once

#include "nlhd/decompose.hpp"
#include "nlhd/image.hpp"

namespace nlhd {

struct ColorCorrectParams {
  double k = 0.013;       // strength of the saturation reduction
  double alpha = 4.5;     // upper bound on the exponent
  double epsilon = 1e-6;  // guards min_m + std_m == 0

  void validate() const;

  friend bool operator==(const ColorCorrectParams&, const ColorCorrectParams&) = default;
};

/// Mean CIELab chroma offset of an image.
struct DeviationStats {
  double mean_a = 0.0;
  double mean_b = 0.0;
  double magnitude = 0.0;  // sqrt(mean_a^2 + mean_b^2)
};

DeviationStats compute_color_deviation(const ImageRGB& img);

/// min(1 + k * deviation / (min_m + std_m + eps), alpha), where min_m and
/// std_m are the minimum and population standard deviation of the three
/// channel means of a group. Always in [1, alpha].
double compute_saturation_gamma(double deviation, double mean_r, double mean_g, double mean_b,
                                const ColorCorrectParams& params);

/// Non-local saturation reduction.
///
/// Rebuilds every similar pixel group recorded in `provenance` on the HSV
/// saturation plane of `img`, raises it to the group's exponent, and averages
/// overlapping estimates. Hue and value are left untouched. Throws
/// ParameterError if the provenance is empty or was recorded on an image of a
/// different size.
ImageRGB correct_saturation(const ImageRGB& img, double deviation,
                            const ColorCorrectParams& params, const GroupProvenance& provenance,
                            int threads = 1);

}  // namespace nlhd
