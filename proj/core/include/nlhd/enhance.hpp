#pragma once

#include "nlhd/image.hpp"

namespace nlhd {

struct EnhanceParams {
  double alpha1 = 0.35;   // dark threshold for the exponent gamma1
  double alpha2 = 0.005;  // dark threshold for gamma2 on very dark inputs
  double alpha3 = 0.05;   // dark threshold for gamma2 otherwise
  double beta1 = 0.45;    // cap on gamma1
  double beta2 = 0.61;    // cap on gamma2
  double theta = 0.9;     // selects between alpha2 and alpha3
  double theta1 = 0.05;
  double theta2 = 0.15;
  double step = 0.15;      // additive step, as a multiple of the initial illumination
  double mean_stop = 0.6;  // accept once the mean exceeds this
  double min_stop = 0.1;   // ... or the minimum exceeds this
  double iteration_scale = 30.0;

  void validate() const;

  friend bool operator==(const EnhanceParams&, const EnhanceParams&) = default;
};

/// (#nonzero pixels below t) / (#nonzero pixels); 0 for an all-zero plane.
double count_ratio(const ImagePlane& plane, double t);

double compute_gamma1(const ImagePlane& illumination, const EnhanceParams& params);
double compute_gamma2(const ImagePlane& illumination, const EnhanceParams& params);

/// x^gamma per pixel, with 0^0 = 1. Negative inputs are treated as 0.
ImagePlane exp_enhance(const ImagePlane& illumination, double gamma1);

/// log2(1 + x) / gamma2 + x per pixel. gamma2 == 0 yields +inf everywhere so
/// that minimum fusion falls through to the exponential branch.
ImagePlane log_enhance(const ImagePlane& illumination, double gamma2);

ImagePlane min_fuse(const ImagePlane& a, const ImagePlane& b);

enum class EnhanceBranch { MinFusion, ExpOnly, LogOnly };

struct IlluminationEnhancement {
  ImagePlane enhanced;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  int max_iterations = 0;  // K
  int iterations = 0;      // passes actually run, 1..K
};

/// K = max(1, round((1 - mean_original) * iteration_scale)).
int max_iterations(double mean_original, const EnhanceParams& params);

/// Iterative illumination enhancement.
///
/// gamma1/gamma2 come from the initial plane. Each pass builds a candidate
/// from the current iterate; the candidate is returned as soon as its mean
/// exceeds mean_stop or its minimum exceeds min_stop. Otherwise the iterate
/// grows by step * initial and the next pass runs. After K passes the last
/// candidate is returned.
IlluminationEnhancement enhance_illumination(const ImagePlane& initial, double mean_original,
                                             const EnhanceParams& params,
                                             EnhanceBranch branch = EnhanceBranch::MinFusion);

/// 1 + reflectance.
ImagePlane enhance_reflectance(const ImagePlane& reflectance);

/// clamp(illumination * reflectance, 0, 1). Non-positive reflectance gives 0
/// even against an infinite illumination.
ImagePlane retinex_product(const ImagePlane& illumination, const ImagePlane& reflectance);

/// Replaces the HSV value channel of `original` with the Retinex product.
ImageRGB compose(const ImagePlane& illumination, const ImagePlane& reflectance,
                 const ImageRGB& original);

/// Replaces the HSV value channel of `original` with `value` (clamped).
ImageRGB replace_value_channel(const ImageRGB& original, const ImagePlane& value);

}  // namespace nlhd
