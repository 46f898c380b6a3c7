// nlhd: low-light enhancement by non-local Haar decomposition.
//
//   nlhd enhance <in> <out>
//   nlhd decompose <in> <out-prefix>
//   nlhd denoise <in> <out>
//   nlhd metrics <a> <b>
//   nlhd batch <in-dir> <out-dir> [--ref <dir>]
//
// Exit status: 0 success, 1 a file failed, 2 bad configuration or usage.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nlhd/batch.hpp"
#include "nlhd/config.hpp"
#include "nlhd/io.hpp"
#include "nlhd/metrics.hpp"
#include "nlhd/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFileFailure = 1;
constexpr int kExitBadConfig = 2;

struct GlobalOptions {
  std::string config_path;
  std::string mode;
  bool no_denoise = false;
  bool no_color_correct = false;
  std::optional<int> threads;
  bool dump_intermediates = false;
};

nlhd::PipelineConfig build_config(const GlobalOptions& opts) {
  nlhd::PipelineConfig cfg =
      opts.config_path.empty() ? nlhd::PipelineConfig{} : nlhd::load_config(opts.config_path);
  if (!opts.mode.empty()) {
    const auto mode = nlhd::parse_mode(opts.mode);
    if (!mode) throw nlhd::ConfigError("unknown --mode '" + opts.mode + "'");
    cfg.mode = *mode;
  }
  if (opts.no_denoise) cfg.enable_denoise = false;
  if (opts.no_color_correct) cfg.enable_color_correct = false;
  if (opts.threads) cfg.threads = *opts.threads;
  try {
    cfg.validate();
  } catch (const nlhd::ParameterError& e) {
    throw nlhd::ConfigError(e.what());
  }
  return cfg;
}

fs::path sibling(const fs::path& out, const std::string& suffix) {
  fs::path p = out;
  p.replace_filename(out.stem().string() + suffix + ".png");
  return p;
}

void write_decomposition(const nlhd::DecompositionResult& dec, const std::string& prefix,
                         bool per_channel) {
  nlhd::save_plane(dec.fused_illumination, prefix + "_illumination.png");
  nlhd::save_plane(nlhd::reflectance_for_display(dec.fused_reflectance),
                   prefix + "_reflectance.png");
  if (!per_channel) return;
  static constexpr const char* names[] = {"r", "g", "b"};
  for (std::size_t c = 0; c < 3; ++c) {
    nlhd::save_plane(dec.illumination[c], prefix + "_illumination_" + names[c] + ".png");
    nlhd::save_plane(nlhd::reflectance_for_display(dec.reflectance[c]),
                     prefix + "_reflectance_" + names[c] + ".png");
  }
}

void print_metrics_line(const std::string& path, const nlhd::MetricReport& m) {
  std::cout << path << '\t' << nlhd::format_metric(m.psnr) << '\t' << nlhd::format_metric(m.ssim)
            << '\t' << nlhd::format_metric(m.delta_e) << '\t' << nlhd::format_metric(m.loe)
            << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-light image enhancement by pixel-level non-local Haar decomposition"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opts;
  app.add_option("--config", opts.config_path, "key = value configuration file");
  app.add_option("--mode", opts.mode, "full|no-nlhd|exp-only|log-only|illum-only|refl-only");
  app.add_flag("--no-denoise", opts.no_denoise, "skip the noise suppression stage");
  app.add_flag("--no-color-correct", opts.no_color_correct, "skip saturation correction");
  app.add_option("--threads", opts.threads, "worker threads (0 = all cores)");
  app.add_flag("--dump-intermediates", opts.dump_intermediates,
               "also write illumination/reflectance planes next to the output");

  std::string in_path, out_path, other_path, ref_dir;

  auto* enhance = app.add_subcommand("enhance", "enhance one image");
  enhance->add_option("input", in_path)->required();
  enhance->add_option("output", out_path)->required();

  auto* decompose = app.add_subcommand("decompose", "write illumination and reflectance planes");
  decompose->add_option("input", in_path)->required();
  decompose->add_option("out-prefix", out_path)->required();

  auto* denoise = app.add_subcommand("denoise", "run only the noise suppression stage");
  denoise->add_option("input", in_path)->required();
  denoise->add_option("output", out_path)->required();

  auto* metrics = app.add_subcommand(
      "metrics", "print '<b> psnr ssim delta_e loe' comparing b against a (a is the LOE original)");
  metrics->add_option("a", in_path)->required();
  metrics->add_option("b", other_path)->required();

  auto* batch = app.add_subcommand("batch", "enhance a directory and write report.tsv");
  batch->add_option("input-dir", in_path)->required();
  batch->add_option("output-dir", out_path)->required();
  batch->add_option("--ref", ref_dir, "directory of reference images with matching names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadConfig;
  }

  nlhd::PipelineConfig cfg;
  try {
    cfg = build_config(opts);
  } catch (const nlhd::ConfigError& e) {
    std::cerr << "nlhd: bad configuration: " << e.what() << '\n';
    return kExitBadConfig;
  }

  try {
    if (*enhance) {
      const auto input = nlhd::load_image(in_path);
      const auto result = nlhd::run_pipeline(input, cfg);
      nlhd::save_image(result.output, out_path);
      if (opts.dump_intermediates) {
        const fs::path out(out_path);
        if (result.decomposition) {
          const auto prefix = (out.parent_path() / out.stem()).string();
          write_decomposition(*result.decomposition, prefix, false);
        }
        nlhd::save_plane(result.illumination.enhanced, sibling(out, "_enhanced_illumination"));
        nlhd::save_image(result.composed, sibling(out, "_composed"));
        std::cerr << "gamma1=" << result.illumination.gamma1
                  << " gamma2=" << result.illumination.gamma2
                  << " iterations=" << result.illumination.iterations << '/'
                  << result.illumination.max_iterations;
        if (result.deviation) std::cerr << " D_c=" << result.deviation->magnitude;
        std::cerr << '\n';
      }
    } else if (*decompose) {
      const auto input = nlhd::load_image(in_path);
      nlhd::DecomposeOptions dopts;
      dopts.abs_all_reflectance = cfg.abs_all_reflectance;
      dopts.threads = cfg.threads;
      const auto dec = nlhd::decompose(input, cfg.illumination, cfg.reflectance, dopts);
      write_decomposition(dec, out_path, opts.dump_intermediates);
    } else if (*denoise) {
      const auto input = nlhd::load_image(in_path);
      nlhd::save_image(nlhd::denoise(input, cfg.denoise, cfg.threads), out_path);
    } else if (*metrics) {
      const auto a = nlhd::load_image(in_path);
      const auto b = nlhd::load_image(other_path);
      nlhd::LoeOptions loe_opts;
      loe_opts.max_side = cfg.loe_max_side;
      loe_opts.threads = cfg.threads;
      print_metrics_line(other_path, nlhd::evaluate(a, b, loe_opts));
    } else if (*batch) {
      std::optional<fs::path> ref;
      if (!ref_dir.empty()) ref = ref_dir;
      const auto report = nlhd::run_batch(in_path, out_path, cfg, ref, std::cerr);
      nlhd::write_report(report, std::cout);
      if (!report.failures.empty()) {
        std::cerr << "nlhd: " << report.failures.size() << " file(s) failed\n";
        return kExitFileFailure;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "nlhd: " << e.what() << '\n';
    return kExitFileFailure;
  }
  return kExitOk;
}
