#include "nlhd/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace nlhd {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

int parse_int(std::string_view key, std::string_view value) {
  int out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError(std::string(key) + ": expected an integer, got '" + std::string(value) + "'");
  }
  return out;
}

double parse_double(std::string_view key, std::string_view value) {
  // from_chars for double is not available on every supported toolchain.
  std::string text(value);
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ConfigError(std::string(key) + ": expected a number, got '" + text + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "on" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "off" || value == "no") return false;
  throw ConfigError(std::string(key) + ": expected true or false, got '" + std::string(value) + "'");
}

using Setter = std::function<void(PipelineConfig&, std::string_view key, std::string_view value)>;

void add_match_keys(std::map<std::string, Setter, std::less<>>& table, const std::string& prefix,
                    MatchParams PipelineConfig::*member) {
  table[prefix + ".patch_side"] = [member](auto& c, auto k, auto v) { (c.*member).patch_side = parse_int(k, v); };
  table[prefix + ".num_blocks"] = [member](auto& c, auto k, auto v) { (c.*member).num_blocks = parse_int(k, v); };
  table[prefix + ".num_rows"] = [member](auto& c, auto k, auto v) { (c.*member).num_rows = parse_int(k, v); };
  table[prefix + ".step"] = [member](auto& c, auto k, auto v) { (c.*member).step = parse_int(k, v); };
  table[prefix + ".search_radius"] = [member](auto& c, auto k, auto v) { (c.*member).search_radius = parse_int(k, v); };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const auto table = [] {
    std::map<std::string, Setter, std::less<>> t;
    add_match_keys(t, "illum", &PipelineConfig::illumination);
    add_match_keys(t, "refl", &PipelineConfig::reflectance);

    auto enhance = [&t](const char* key, double EnhanceParams::*field) {
      t[std::string("enhance.") + key] = [field](auto& c, auto k, auto v) { c.enhance.*field = parse_double(k, v); };
    };
    enhance("alpha1", &EnhanceParams::alpha1);
    enhance("alpha2", &EnhanceParams::alpha2);
    enhance("alpha3", &EnhanceParams::alpha3);
    enhance("beta1", &EnhanceParams::beta1);
    enhance("beta2", &EnhanceParams::beta2);
    enhance("theta", &EnhanceParams::theta);
    enhance("theta1", &EnhanceParams::theta1);
    enhance("theta2", &EnhanceParams::theta2);
    enhance("step", &EnhanceParams::step);
    enhance("mean_stop", &EnhanceParams::mean_stop);
    enhance("min_stop", &EnhanceParams::min_stop);
    enhance("iteration_scale", &EnhanceParams::iteration_scale);

    t["denoise.patch_side"] = [](auto& c, auto k, auto v) { c.denoise.match.patch_side = parse_int(k, v); };
    t["denoise.num_blocks"] = [](auto& c, auto k, auto v) { c.denoise.match.num_blocks = parse_int(k, v); };
    t["denoise.num_rows"] = [](auto& c, auto k, auto v) { c.denoise.match.num_rows = parse_int(k, v); };
    t["denoise.step"] = [](auto& c, auto k, auto v) { c.denoise.match.step = parse_int(k, v); };
    t["denoise.search_radius"] = [](auto& c, auto k, auto v) { c.denoise.match.search_radius = parse_int(k, v); };
    t["denoise.k"] = [](auto& c, auto k, auto v) { c.denoise.k = parse_double(k, v); };
    t["denoise.epsilon"] = [](auto& c, auto k, auto v) { c.denoise.epsilon = parse_double(k, v); };
    t["denoise.passes"] = [](auto& c, auto k, auto v) { c.denoise.passes = parse_int(k, v); };
    t["denoise.enabled"] = [](auto& c, auto k, auto v) { c.enable_denoise = parse_bool(k, v); };

    t["color.k"] = [](auto& c, auto k, auto v) { c.color.k = parse_double(k, v); };
    t["color.alpha"] = [](auto& c, auto k, auto v) { c.color.alpha = parse_double(k, v); };
    t["color.epsilon"] = [](auto& c, auto k, auto v) { c.color.epsilon = parse_double(k, v); };
    t["color.enabled"] = [](auto& c, auto k, auto v) { c.enable_color_correct = parse_bool(k, v); };

    t["decompose.abs_all_reflectance"] = [](auto& c, auto k, auto v) { c.abs_all_reflectance = parse_bool(k, v); };
    t["pipeline.mode"] = [](auto& c, auto k, auto v) {
      const auto mode = parse_mode(v);
      if (!mode) throw ConfigError(std::string(k) + ": unknown mode '" + std::string(v) + "'");
      c.mode = *mode;
    };
    t["pipeline.threads"] = [](auto& c, auto k, auto v) { c.threads = parse_int(k, v); };
    t["metrics.loe_max_side"] = [](auto& c, auto k, auto v) { c.loe_max_side = parse_int(k, v); };
    return t;
  }();
  return table;
}

}  // namespace

void apply_setting(PipelineConfig& config, std::string_view key, std::string_view value) {
  const auto it = setters().find(key);
  if (it == setters().end()) {
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  }
  it->second(config, key, value);
}

void parse_config(std::istream& in, PipelineConfig& config) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected 'key = value'");
    }
    const auto key = trim(view.substr(0, eq));
    const auto value = trim(view.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(number) + ": expected 'key = value'");
    }
    try {
      apply_setting(config, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(number) + ": " + e.what());
    }
  }
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  PipelineConfig config;
  parse_config(in, config);
  try {
    config.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return config;
}

std::string format_config(const PipelineConfig& c) {
  std::ostringstream out;
  // Shortest text that reads back to the same double.
  auto num = [](double v) {
    char buf[32];
    return std::string(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
  };
  auto match = [&](const char* prefix, const MatchParams& m) {
    out << prefix << ".patch_side = " << m.patch_side << '\n'
        << prefix << ".num_blocks = " << m.num_blocks << '\n'
        << prefix << ".num_rows = " << m.num_rows << '\n'
        << prefix << ".step = " << m.step << '\n'
        << prefix << ".search_radius = " << m.search_radius << '\n';
  };
  match("illum", c.illumination);
  match("refl", c.reflectance);
  const auto& e = c.enhance;
  out << "enhance.alpha1 = " << num(e.alpha1) << '\n'
      << "enhance.alpha2 = " << num(e.alpha2) << '\n'
      << "enhance.alpha3 = " << num(e.alpha3) << '\n'
      << "enhance.beta1 = " << num(e.beta1) << '\n'
      << "enhance.beta2 = " << num(e.beta2) << '\n'
      << "enhance.theta = " << num(e.theta) << '\n'
      << "enhance.theta1 = " << num(e.theta1) << '\n'
      << "enhance.theta2 = " << num(e.theta2) << '\n'
      << "enhance.step = " << num(e.step) << '\n'
      << "enhance.mean_stop = " << num(e.mean_stop) << '\n'
      << "enhance.min_stop = " << num(e.min_stop) << '\n'
      << "enhance.iteration_scale = " << num(e.iteration_scale) << '\n';
  match("denoise", c.denoise.match);
  out << "denoise.k = " << num(c.denoise.k) << '\n'
      << "denoise.epsilon = " << num(c.denoise.epsilon) << '\n'
      << "denoise.passes = " << c.denoise.passes << '\n'
      << "denoise.enabled = " << (c.enable_denoise ? "true" : "false") << '\n'
      << "color.k = " << num(c.color.k) << '\n'
      << "color.alpha = " << num(c.color.alpha) << '\n'
      << "color.epsilon = " << num(c.color.epsilon) << '\n'
      << "color.enabled = " << (c.enable_color_correct ? "true" : "false") << '\n'
      << "decompose.abs_all_reflectance = " << (c.abs_all_reflectance ? "true" : "false") << '\n'
      << "pipeline.mode = " << to_string(c.mode) << '\n'
      << "pipeline.threads = " << c.threads << '\n'
      << "metrics.loe_max_side = " << c.loe_max_side << '\n';
  return out.str();
}

}  // namespace nlhd
