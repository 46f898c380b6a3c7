#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "nlhd/color_correct.hpp"
#include "nlhd/decompose.hpp"
#include "nlhd/denoise.hpp"
#include "nlhd/enhance.hpp"
#include "nlhd/grouping.hpp"
#include "nlhd/image.hpp"

namespace nlhd {

/// Which enhancement route to take.
enum class AblationMode {
  Full,       // decomposition + min-fused illumination + reflectance
  NoNlhd,     // enhance the bright channel directly, no decomposition
  ExpOnly,    // exponential branch only
  LogOnly,    // logarithmic branch only
  IllumOnly,  // enhanced illumination, reflectance fixed at 1
  ReflOnly,   // enhanced reflectance, illumination left as decomposed
};

std::string_view to_string(AblationMode mode) noexcept;
/// Accepts full, no-nlhd, exp-only, log-only, illum-only, refl-only.
std::optional<AblationMode> parse_mode(std::string_view text) noexcept;

struct PipelineConfig {
  MatchParams illumination{6, 8, 2, 6, 13};
  MatchParams reflectance{11, 16, 16, 10, 23};
  EnhanceParams enhance;
  DenoiseParams denoise;
  ColorCorrectParams color;

  bool enable_denoise = true;
  bool enable_color_correct = true;
  bool abs_all_reflectance = false;
  AblationMode mode = AblationMode::Full;

  int threads = 1;  // 0 = hardware concurrency
  int loe_max_side = 100;

  /// Throws ParameterError naming the offending stage.
  void validate() const;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

/// Everything the pipeline produced on the way to its output.
struct PipelineResult {
  ImageRGB output;
  ImageRGB composed;  // after V replacement, before denoising / correction
  std::optional<DecompositionResult> decomposition;
  IlluminationEnhancement illumination;
  ImagePlane enhanced_reflectance;
  std::optional<DeviationStats> deviation;  // measured before correction
};

PipelineResult run_pipeline(const ImageRGB& img, const PipelineConfig& config);

/// run_pipeline(img, config).output
ImageRGB enhance_pipeline(const ImageRGB& img, const PipelineConfig& config);

}  // namespace nlhd
