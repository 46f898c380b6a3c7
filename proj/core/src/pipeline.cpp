#include "nlhd/pipeline.hpp"

namespace nlhd {

std::string_view to_string(AblationMode mode) noexcept {
  switch (mode) {
    case AblationMode::Full: return "full";
    case AblationMode::NoNlhd: return "no-nlhd";
    case AblationMode::ExpOnly: return "exp-only";
    case AblationMode::LogOnly: return "log-only";
    case AblationMode::IllumOnly: return "illum-only";
    case AblationMode::ReflOnly: return "refl-only";
  }
  return "full";
}

std::optional<AblationMode> parse_mode(std::string_view text) noexcept {
  for (auto m : {AblationMode::Full, AblationMode::NoNlhd, AblationMode::ExpOnly,
                 AblationMode::LogOnly, AblationMode::IllumOnly, AblationMode::ReflOnly}) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

void PipelineConfig::validate() const {
  auto stage = [](const char* name, auto&& check) {
    try {
      check();
    } catch (const ParameterError& e) {
      throw ParameterError(std::string(name) + ": " + e.what());
    }
  };
  stage("illum", [&] { illumination.validate(); });
  stage("refl", [&] { reflectance.validate(); });
  stage("enhance", [&] { enhance.validate(); });
  stage("denoise", [&] { denoise.validate(); });
  stage("color", [&] { color.validate(); });
  if (threads < 0) throw ParameterError("pipeline: threads must be >= 0");
  if (loe_max_side < 0) throw ParameterError("metrics: loe_max_side must be >= 0");
}

PipelineResult run_pipeline(const ImageRGB& img, const PipelineConfig& config) {
  config.validate();
  if (img.empty()) throw ImageError("run_pipeline: empty image");

  PipelineResult result;
  const double mean_original = img.mean();
  GroupProvenance provenance;

  if (config.mode == AblationMode::NoNlhd) {
    const ImagePlane bright = bright_channel(img);
    result.illumination = enhance_illumination(bright, mean_original, config.enhance);
    result.enhanced_reflectance = ImagePlane(img.height(), img.width(), 1.0);
  } else {
    DecomposeOptions opts;
    opts.abs_all_reflectance = config.abs_all_reflectance;
    opts.threads = config.threads;
    GroupProvenance* record = config.enable_color_correct ? &provenance : nullptr;
    result.decomposition =
        decompose(img, config.illumination, config.reflectance, opts, record);
    const auto& dec = *result.decomposition;

    EnhanceBranch branch = EnhanceBranch::MinFusion;
    if (config.mode == AblationMode::ExpOnly) branch = EnhanceBranch::ExpOnly;
    if (config.mode == AblationMode::LogOnly) branch = EnhanceBranch::LogOnly;

    if (config.mode == AblationMode::ReflOnly) {
      result.illumination.enhanced = dec.fused_illumination;
      result.illumination.gamma1 = compute_gamma1(dec.fused_illumination, config.enhance);
      result.illumination.gamma2 = compute_gamma2(dec.fused_illumination, config.enhance);
    } else {
      result.illumination =
          enhance_illumination(dec.fused_illumination, mean_original, config.enhance, branch);
    }

    if (config.mode == AblationMode::IllumOnly) {
      result.enhanced_reflectance = ImagePlane(img.height(), img.width(), 1.0);
    } else {
      result.enhanced_reflectance = enhance_reflectance(dec.fused_reflectance);
    }
  }

  result.composed = compose(result.illumination.enhanced, result.enhanced_reflectance, img);
  ImageRGB current = result.composed;

  if (config.enable_denoise) {
    current = denoise(current, config.denoise, config.threads);
  }
  if (config.enable_color_correct) {
    if (provenance.empty()) {
      provenance = match_groups(img, config.illumination, config.threads);
    }
    result.deviation = compute_color_deviation(current);
    current = correct_saturation(current, result.deviation->magnitude, config.color, provenance,
                                 config.threads);
  }
  result.output = std::move(current);
  return result;
}

ImageRGB enhance_pipeline(const ImageRGB& img, const PipelineConfig& config) {
  return run_pipeline(img, config).output;
}

}  // namespace nlhd
