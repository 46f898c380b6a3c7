#pragma once

#include "nlhd/image.hpp"

namespace nlhd {

struct MetricReport {
  double psnr = 0.0;     // dB, +inf for identical images
  double ssim = 0.0;
  double delta_e = 0.0;  // mean CIE76
  double loe = 0.0;
};

/// 10 log10(1 / MSE), MSE pooled over all three channels.
double psnr(const ImageRGB& a, const ImageRGB& b);

struct SsimOptions {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 1.0;
};

/// Rec.601 luma: 0.299 R + 0.587 G + 0.114 B.
ImagePlane luma(const ImageRGB& img);

/// Single-scale SSIM of the luma planes with a normalized Gaussian window,
/// averaged over every position where the window fits entirely.
/// Throws ImageError if either side is smaller than the window.
double ssim(const ImageRGB& a, const ImageRGB& b, const SsimOptions& options = {});

/// Mean per-pixel CIE76 distance in L*a*b*.
double delta_e(const ImageRGB& a, const ImageRGB& b);

struct LoeOptions {
  /// Nearest-neighbour downsampling so the longer side is at most this many
  /// pixels before the quadratic pair count. 0 disables downsampling.
  int max_side = 100;
  int threads = 1;
};

/// Nearest-neighbour resample of a plane to the given size.
ImagePlane downsample_nearest(const ImagePlane& plane, std::size_t height, std::size_t width);

/// Lightness order error between an original and an enhanced image.
///
/// Lightness is max(R,G,B). For every ordered pixel pair (x, y) of the
/// (downsampled) maps it counts whether [L(x) >= L(y)] and [Le(x) >= Le(y)]
/// disagree; the total is divided by the pixel count.
double loe(const ImageRGB& original, const ImageRGB& enhanced, const LoeOptions& options = {});

/// LOE on precomputed lightness maps, without downsampling.
double loe_from_lightness(const ImagePlane& original, const ImagePlane& enhanced, int threads = 1);

/// All four metrics between `a` and `b`, with `a` as the LOE original.
MetricReport evaluate(const ImageRGB& a, const ImageRGB& b, const LoeOptions& loe_options = {});

}  // namespace nlhd
