#include "nlhd/batch.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <variant>

#include "nlhd/io.hpp"
#include "nlhd/metrics.hpp"
#include "parallel.hpp"

namespace fs = std::filesystem;

namespace nlhd {

std::optional<BatchRow> BatchReport::means() const {
  if (rows.empty()) return std::nullopt;
  BatchRow m;
  m.name = "mean";
  const double n = static_cast<double>(rows.size());
  double loe_sum = 0.0;
  for (const auto& r : rows) loe_sum += r.loe;
  m.loe = loe_sum / n;
  if (has_reference) {
    double p = 0.0, s = 0.0, d = 0.0;
    for (const auto& r : rows) {
      p += r.psnr.value_or(0.0);
      s += r.ssim.value_or(0.0);
      d += r.delta_e.value_or(0.0);
    }
    m.psnr = p / n;
    m.ssim = s / n;
    m.delta_e = d / n;
  }
  return m;
}

std::string format_metric(std::optional<double> value) {
  if (!value) return "-";
  if (std::isinf(*value)) return *value > 0 ? "inf" : "-inf";
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << *value;
  return out.str();
}

void write_report(const BatchReport& report, std::ostream& out) {
  auto row = [&](const BatchRow& r) {
    out << r.name << '\t' << format_metric(r.psnr) << '\t' << format_metric(r.ssim) << '\t'
        << format_metric(r.delta_e) << '\t' << format_metric(r.loe) << '\n';
  };
  out << "path\tpsnr\tssim\tdelta_e\tloe\n";
  for (const auto& r : report.rows) row(r);
  if (const auto m = report.means()) row(*m);
}

namespace {

std::optional<fs::path> find_reference(const fs::path& dir, const fs::path& input) {
  const fs::path same = dir / input.filename();
  if (is_supported_image(same)) return same;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.path().stem() == input.stem() && is_supported_image(entry.path())) {
      return entry.path();
    }
  }
  return std::nullopt;
}

}  // namespace

BatchReport run_batch(const fs::path& input_dir, const fs::path& output_dir,
                      const PipelineConfig& config, const std::optional<fs::path>& reference_dir,
                      std::ostream& log) {
  config.validate();
  if (!fs::is_directory(input_dir)) {
    throw IoError("run_batch: not a directory: " + input_dir.string());
  }
  if (reference_dir && !fs::is_directory(*reference_dir)) {
    throw IoError("run_batch: not a directory: " + reference_dir->string());
  }
  fs::create_directories(output_dir);

  std::vector<fs::path> inputs;
  for (const auto& entry : fs::directory_iterator(input_dir)) {
    if (entry.is_regular_file() && is_supported_image(entry.path())) inputs.push_back(entry.path());
  }
  std::sort(inputs.begin(), inputs.end());

  BatchReport report;
  report.has_reference = reference_dir.has_value();

  // Spread files over workers, each running the pipeline single-threaded.
  // Outputs do not depend on the split.
  PipelineConfig per_file = config;
  const unsigned workers = detail::resolve_threads(config.threads);
  const bool across_files = workers > 1 && inputs.size() > 1;
  if (across_files) per_file.threads = 1;

  using Outcome = std::variant<BatchRow, std::string>;
  detail::ordered_parallel_map(
      inputs.size(), across_files ? config.threads : 1,
      [&](std::size_t i) -> Outcome {
        const auto& path = inputs[i];
        try {
          const ImageRGB input = load_image(path);
          const ImageRGB enhanced = enhance_pipeline(input, per_file);
          fs::path out_path = output_dir / path.filename();
          out_path.replace_extension(".png");
          save_image(enhanced, out_path);
          // Score what was written, not the unquantized doubles.
          const ImageRGB output = quantize_image(enhanced);

          BatchRow row;
          row.name = path.filename().string();
          LoeOptions loe_opts;
          loe_opts.max_side = per_file.loe_max_side;
          loe_opts.threads = per_file.threads;
          row.loe = loe(input, output, loe_opts);
          if (reference_dir) {
            const auto ref_path = find_reference(*reference_dir, path);
            if (!ref_path) throw IoError("no reference image for " + row.name);
            const ImageRGB reference = load_image(*ref_path);
            require_same_shape(reference, output, "reference");
            row.psnr = psnr(output, reference);
            row.ssim = ssim(output, reference);
            row.delta_e = delta_e(output, reference);
          }
          return row;
        } catch (const std::exception& e) {
          return path.filename().string() + ": " + e.what();
        }
      },
      [&](std::size_t, Outcome&& outcome) {
        if (auto* row = std::get_if<BatchRow>(&outcome)) {
          report.rows.push_back(std::move(*row));
        } else {
          const auto& msg = std::get<std::string>(outcome);
          log << "error: " << msg << '\n';
          report.failures.push_back(msg);
        }
      });

  std::ofstream out(output_dir / "report.tsv");
  if (!out) throw IoError("run_batch: cannot write report in " + output_dir.string());
  write_report(report, out);
  return report;
}

}  // namespace nlhd
