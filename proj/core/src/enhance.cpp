#include "nlhd/enhance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlhd/color.hpp"
#include "nlhd/grouping.hpp"

namespace nlhd {

void EnhanceParams::validate() const {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(alpha1) || !in_unit(alpha2) || !in_unit(alpha3) || !in_unit(theta) ||
      !in_unit(theta1) || !in_unit(theta2) || !in_unit(mean_stop) || !in_unit(min_stop)) {
    throw ParameterError("EnhanceParams: thresholds must lie in [0,1]");
  }
  if (!(beta1 > 0.0 && beta1 <= 1.0) || !(beta2 > 0.0 && beta2 <= 1.0)) {
    throw ParameterError("EnhanceParams: beta1 and beta2 must lie in (0,1]");
  }
  if (step < 0.0 || iteration_scale < 0.0) {
    throw ParameterError("EnhanceParams: step and iteration_scale must be non-negative");
  }
}

double count_ratio(const ImagePlane& plane, double t) {
  std::size_t nonzero = 0;
  std::size_t below = 0;
  for (double v : plane.values()) {
    if (v == 0.0) continue;
    ++nonzero;
    if (v < t) ++below;
  }
  return nonzero == 0 ? 0.0 : static_cast<double>(below) / static_cast<double>(nonzero);
}

double compute_gamma1(const ImagePlane& illumination, const EnhanceParams& params) {
  return std::min(count_ratio(illumination, params.alpha1), params.beta1);
}

double compute_gamma2(const ImagePlane& illumination, const EnhanceParams& params) {
  std::size_t below1 = 0;
  std::size_t below2 = 0;
  for (double v : illumination.values()) {
    if (v < params.theta1) ++below1;
    if (v < params.theta2) ++below2;
  }
  const double guard =
      below2 == 0 ? 0.0 : static_cast<double>(below1) / static_cast<double>(below2);
  const double alpha = guard > params.theta ? params.alpha2 : params.alpha3;
  return std::min(count_ratio(illumination, alpha), params.beta2);
}

ImagePlane exp_enhance(const ImagePlane& illumination, double gamma1) {
  ImagePlane out(illumination.height(), illumination.width());
  auto in = illumination.values();
  auto o = out.values();
  for (std::size_t i = 0; i < o.size(); ++i) {
    o[i] = std::pow(std::max(in[i], 0.0), gamma1);
  }
  return out;
}

ImagePlane log_enhance(const ImagePlane& illumination, double gamma2) {
  if (gamma2 <= 0.0) {
    return ImagePlane(illumination.height(), illumination.width(),
                      std::numeric_limits<double>::infinity());
  }
  ImagePlane out(illumination.height(), illumination.width());
  auto in = illumination.values();
  auto o = out.values();
  for (std::size_t i = 0; i < o.size(); ++i) {
    o[i] = std::log2(1.0 + in[i]) / gamma2 + in[i];
  }
  return out;
}

ImagePlane min_fuse(const ImagePlane& a, const ImagePlane& b) {
  require_same_shape(a, b, "min_fuse");
  ImagePlane out(a.height(), a.width());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.values()[i] = std::min(a.values()[i], b.values()[i]);
  }
  return out;
}

int max_iterations(double mean_original, const EnhanceParams& params) {
  const double k = std::round((1.0 - mean_original) * params.iteration_scale);
  return std::max(1, static_cast<int>(k));
}

IlluminationEnhancement enhance_illumination(const ImagePlane& initial, double mean_original,
                                             const EnhanceParams& params, EnhanceBranch branch) {
  IlluminationEnhancement out;
  out.gamma1 = compute_gamma1(initial, params);
  out.gamma2 = compute_gamma2(initial, params);
  out.max_iterations = max_iterations(mean_original, params);

  ImagePlane current = initial;
  for (int k = 0; k < out.max_iterations; ++k) {
    switch (branch) {
      case EnhanceBranch::MinFusion:
        out.enhanced = min_fuse(exp_enhance(current, out.gamma1), log_enhance(current, out.gamma2));
        break;
      case EnhanceBranch::ExpOnly:
        out.enhanced = exp_enhance(current, out.gamma1);
        break;
      case EnhanceBranch::LogOnly:
        out.enhanced = log_enhance(current, out.gamma2);
        break;
    }
    out.iterations = k + 1;
    if (out.enhanced.mean() > params.mean_stop || out.enhanced.min() > params.min_stop) {
      break;
    }
    auto cur = current.values();
    auto init = initial.values();
    for (std::size_t i = 0; i < cur.size(); ++i) cur[i] += params.step * init[i];
  }
  return out;
}

ImagePlane enhance_reflectance(const ImagePlane& reflectance) {
  ImagePlane out = reflectance;
  for (double& v : out.values()) v += 1.0;
  return out;
}

ImagePlane retinex_product(const ImagePlane& illumination, const ImagePlane& reflectance) {
  require_same_shape(illumination, reflectance, "retinex_product");
  ImagePlane out(illumination.height(), illumination.width());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double l = illumination.values()[i];
    const double r = reflectance.values()[i];
    out.values()[i] = (r <= 0.0 || l <= 0.0) ? 0.0 : std::min(l * r, 1.0);
  }
  return out;
}

ImageRGB replace_value_channel(const ImageRGB& original, const ImagePlane& value) {
  require_same_shape(original.r(), value, "replace_value_channel");
  auto hsv = rgb_to_hsv(original);
  for (std::size_t i = 0; i < value.size(); ++i) {
    hsv.v.values()[i] = std::clamp(value.values()[i], 0.0, 1.0);
  }
  return hsv_to_rgb(hsv);
}

ImageRGB compose(const ImagePlane& illumination, const ImagePlane& reflectance,
                 const ImageRGB& original) {
  require_same_shape(original.r(), illumination, "compose");
  return replace_value_channel(original, retinex_product(illumination, reflectance));
}

}  // namespace nlhd
