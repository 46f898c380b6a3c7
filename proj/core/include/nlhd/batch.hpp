#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nlhd/pipeline.hpp"

namespace nlhd {

struct BatchRow {
  std::string name;               // input file name
  std::optional<double> psnr;     // against the reference, when given
  std::optional<double> ssim;
  std::optional<double> delta_e;
  double loe = 0.0;               // input vs enhanced
};

struct BatchReport {
  std::vector<BatchRow> rows;     // successful files, sorted by name
  std::vector<std::string> failures;
  bool has_reference = false;

  /// Arithmetic means over `rows`; empty when there are no rows.
  std::optional<BatchRow> means() const;
};

/// Formats a metric the way reports print it: fixed 4 decimals, `inf` for
/// infinity, `-` when absent.
std::string format_metric(std::optional<double> value);

/// Tab-separated report: header, one row per image, then a `mean` row when
/// there is at least one image.
void write_report(const BatchReport& report, std::ostream& out);

/// Enhances every PNG/JPEG in `input_dir` (non-recursive) into `output_dir` as
/// <stem>.png and writes `output_dir/report.tsv`. With `reference_dir`, each
/// output is compared to the file of the same name (or same stem) there.
/// Metrics are computed on the 8-bit output as written.
/// Per-file failures are collected, logged to `log`, and do not stop the run.
BatchReport run_batch(const std::filesystem::path& input_dir,
                      const std::filesystem::path& output_dir, const PipelineConfig& config,
                      const std::optional<std::filesystem::path>& reference_dir,
                      std::ostream& log);

}  // namespace nlhd
