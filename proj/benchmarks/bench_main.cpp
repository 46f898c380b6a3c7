#include <benchmark/benchmark.h>

#include <random>

#include "nlhd/nlhd.hpp"

using namespace nlhd;

namespace {

ImageRGB noise_image(std::size_t h, std::size_t w, double scale) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, scale);
  ImageRGB img(h, w);
  for (std::size_t c = 0; c < 3; ++c) {
    for (double& v : img[c].values()) v = u(rng);
  }
  return img;
}

Matrix random_group(std::size_t rows, std::size_t cols) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(rows, cols);
  for (double& v : m.values()) v = u(rng);
  return m;
}

}  // namespace

static void BM_HaarRoundTrip(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix m = random_group(n, 16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(haar_inverse(haar_forward(m)));
  }
}
BENCHMARK(BM_HaarRoundTrip)->Arg(2)->Arg(4)->Arg(16);

static void BM_BlockMatch(benchmark::State& state) {
  const auto img = noise_image(128, 128, 1.0);
  const MatchParams mp{static_cast<int>(state.range(0)), 16, 16, 10, 23};
  for (auto _ : state) {
    benchmark::DoNotOptimize(block_match(img.r(), {50, 50}, mp));
  }
}
BENCHMARK(BM_BlockMatch)->Arg(6)->Arg(11);

static void BM_RowMatchAllRows(benchmark::State& state) {
  const auto img = noise_image(64, 64, 1.0);
  const MatchParams mp{11, 16, 16, 10, 23};
  const auto group = extract_block_group(img.r(), block_match(img.r(), {20, 20}, mp), 11, Channel::R);
  for (auto _ : state) {
    const RowDistanceTable table(group.stack);
    for (std::size_t r = 0; r < group.rows(); ++r) {
      benchmark::DoNotOptimize(select_similar_rows(table.squared_from(r), static_cast<int>(r), 16));
    }
  }
}
BENCHMARK(BM_RowMatchAllRows);

static void BM_Decompose(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto img = noise_image(n, n, 0.3);
  const PipelineConfig cfg;
  DecomposeOptions opts;
  opts.threads = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose(img, cfg.illumination, cfg.reflectance, opts));
  }
}
BENCHMARK(BM_Decompose)->Args({64, 1})->Args({128, 1})->Args({128, 4})->Unit(benchmark::kMillisecond);

static void BM_Denoise(benchmark::State& state) {
  const auto img = noise_image(64, 64, 1.0);
  const DenoiseParams params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(denoise(img, params, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_Denoise)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_Pipeline(benchmark::State& state) {
  const auto img = noise_image(96, 128, 0.2);
  PipelineConfig cfg;
  cfg.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enhance_pipeline(img, cfg));
  }
}
BENCHMARK(BM_Pipeline)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
