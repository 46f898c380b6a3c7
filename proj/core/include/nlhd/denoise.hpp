#pragma once

#include <span>

#include "nlhd/grouping.hpp"
#include "nlhd/haar.hpp"
#include "nlhd/image.hpp"

namespace nlhd {

struct DenoiseParams {
  /// Block side 6, 16 blocks, 4 rows per group, stride 5, search radius 13.
  MatchParams match{6, 16, 4, 5, 13};
  double k = 1000.0;       // scales the distance spread in the threshold
  double epsilon = 1e-6;   // floor for the threshold denominators
  int passes = 2;

  void validate() const;

  friend bool operator==(const DenoiseParams&, const DenoiseParams&) = default;
};

/// Local noise statistics of one reference patch plus the mean of one group.
struct NoiseStats {
  double sigma = 0.0;       // RMS of the minimum row-matching distances
  double sigma_d = 0.0;     // spread of those distances
  double group_mean = 0.0;  // mean of the similar pixel group
};

/// sqrt(sum(d^2) / n).
double estimate_sigma(std::span<const double> min_distances);

/// sqrt(sum((d - mean(d))^2)). Deliberately not divided by n.
double estimate_sigma_d(std::span<const double> min_distances);

/// sigma / (max(group_mean, eps) * max(k * sigma_d, eps)).
double compute_threshold(const NoiseStats& stats, const DenoiseParams& params);

/// Zeroes every non-DC coefficient with |c| < threshold, then zeroes every
/// row below the first whose RMS is below threshold. DC is never touched.
HaarSpectrum hard_threshold(HaarSpectrum spectrum, double threshold);

/// One grouping + thresholding pass, channels processed independently with
/// groups built on shared block matches. Deterministic for any thread count.
ImageRGB denoise_pass(const ImageRGB& img, const DenoiseParams& params, int threads = 1);

/// `params.passes` sequential passes; each re-matches on the previous output.
ImageRGB denoise(const ImageRGB& img, const DenoiseParams& params, int threads = 1);

}  // namespace nlhd
