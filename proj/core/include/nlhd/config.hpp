#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nlhd/pipeline.hpp"

namespace nlhd {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Plain-text configuration: one `key = value` per line, `#` starts a comment,
// keys are namespaced by stage:
//
//   illum.patch_side = 6        refl.search_radius = 23
//   enhance.alpha1 = 0.35       denoise.k = 1000
//   color.alpha = 4.5           denoise.enabled = false
//   pipeline.mode = exp-only    pipeline.threads = 4
//   decompose.abs_all_reflectance = true
//   metrics.loe_max_side = 100

/// Applies one setting. Throws ConfigError for unknown keys or bad values.
void apply_setting(PipelineConfig& config, std::string_view key, std::string_view value);

/// Parses settings on top of `config`. Throws ConfigError with a line number.
void parse_config(std::istream& in, PipelineConfig& config);

/// Defaults overlaid with the file's settings, then validated.
PipelineConfig load_config(const std::filesystem::path& path);

/// Every setting of `config` in the file format, one per line.
std::string format_config(const PipelineConfig& config);

}  // namespace nlhd
