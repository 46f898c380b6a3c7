#include "nlhd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "nlhd/color.hpp"
#include "parallel.hpp"

namespace nlhd {

double psnr(const ImageRGB& a, const ImageRGB& b) {
  require_same_shape(a, b, "psnr");
  double sum = 0.0;
  for (std::size_t c = 0; c < 3; ++c) {
    auto pa = a[c].values();
    auto pb = b[c].values();
    for (std::size_t i = 0; i < pa.size(); ++i) {
      const double d = pa[i] - pb[i];
      sum += d * d;
    }
  }
  const double mse = sum / static_cast<double>(3 * a.pixel_count());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

ImagePlane luma(const ImageRGB& img) {
  ImagePlane out(img.height(), img.width());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.values()[i] =
        0.299 * img.r().values()[i] + 0.587 * img.g().values()[i] + 0.114 * img.b().values()[i];
  }
  return out;
}

namespace {

std::vector<double> gaussian_kernel(int size, double sigma) {
  std::vector<double> k(static_cast<std::size_t>(size));
  const double center = (size - 1) / 2.0;
  for (int i = 0; i < size; ++i) {
    const double d = i - center;
    k[static_cast<std::size_t>(i)] = std::exp(-(d * d) / (2.0 * sigma * sigma));
  }
  const double total = std::accumulate(k.begin(), k.end(), 0.0);
  for (double& v : k) v /= total;
  return k;
}

// Separable "valid" filtering: output is (h - n + 1) x (w - n + 1).
ImagePlane filter_valid(const ImagePlane& in, const std::vector<double>& k) {
  const std::size_t n = k.size();
  const std::size_t h = in.height();
  const std::size_t w = in.width();
  const std::size_t oh = h - n + 1;
  const std::size_t ow = w - n + 1;
  ImagePlane horiz(h, ow);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < ow; ++x) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += k[j] * in(y, x + j);
      horiz(y, x) = s;
    }
  }
  ImagePlane out(oh, ow);
  for (std::size_t y = 0; y < oh; ++y) {
    for (std::size_t x = 0; x < ow; ++x) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += k[i] * horiz(y + i, x);
      out(y, x) = s;
    }
  }
  return out;
}

ImagePlane product(const ImagePlane& a, const ImagePlane& b) {
  ImagePlane out(a.height(), a.width());
  for (std::size_t i = 0; i < out.size(); ++i) out.values()[i] = a.values()[i] * b.values()[i];
  return out;
}

}  // namespace

double ssim(const ImageRGB& a, const ImageRGB& b, const SsimOptions& options) {
  require_same_shape(a, b, "ssim");
  const auto win = static_cast<std::size_t>(options.window);
  if (a.height() < win || a.width() < win) {
    throw ImageError("ssim: image is smaller than the " + std::to_string(win) + "x" +
                     std::to_string(win) + " window");
  }
  const auto kernel = gaussian_kernel(options.window, options.sigma);
  const ImagePlane x = luma(a);
  const ImagePlane y = luma(b);

  const ImagePlane mu_x = filter_valid(x, kernel);
  const ImagePlane mu_y = filter_valid(y, kernel);
  const ImagePlane xx = filter_valid(product(x, x), kernel);
  const ImagePlane yy = filter_valid(product(y, y), kernel);
  const ImagePlane xy = filter_valid(product(x, y), kernel);

  const double c1 = std::pow(options.k1 * options.dynamic_range, 2);
  const double c2 = std::pow(options.k2 * options.dynamic_range, 2);
  double total = 0.0;
  for (std::size_t i = 0; i < mu_x.size(); ++i) {
    const double mx = mu_x.values()[i];
    const double my = mu_y.values()[i];
    const double vx = xx.values()[i] - mx * mx;
    const double vy = yy.values()[i] - my * my;
    const double cxy = xy.values()[i] - mx * my;
    total += ((2.0 * mx * my + c1) * (2.0 * cxy + c2)) /
             ((mx * mx + my * my + c1) * (vx + vy + c2));
  }
  return total / static_cast<double>(mu_x.size());
}

double delta_e(const ImageRGB& a, const ImageRGB& b) {
  require_same_shape(a, b, "delta_e");
  const auto la = rgb_to_lab(a);
  const auto lb = rgb_to_lab(b);
  double total = 0.0;
  for (std::size_t i = 0; i < la.l.size(); ++i) {
    const double dl = la.l.values()[i] - lb.l.values()[i];
    const double da = la.a.values()[i] - lb.a.values()[i];
    const double db = la.b.values()[i] - lb.b.values()[i];
    total += std::sqrt(dl * dl + da * da + db * db);
  }
  return total / static_cast<double>(la.l.size());
}

ImagePlane downsample_nearest(const ImagePlane& plane, std::size_t height, std::size_t width) {
  ImagePlane out(height, width);
  for (std::size_t y = 0; y < height; ++y) {
    const auto sy = std::min(plane.height() - 1, (2 * y + 1) * plane.height() / (2 * height));
    for (std::size_t x = 0; x < width; ++x) {
      const auto sx = std::min(plane.width() - 1, (2 * x + 1) * plane.width() / (2 * width));
      out(y, x) = plane(sy, sx);
    }
  }
  return out;
}

double loe_from_lightness(const ImagePlane& original, const ImagePlane& enhanced, int threads) {
  require_same_shape(original, enhanced, "loe");
  const auto lo = original.values();
  const auto le = enhanced.values();
  const std::size_t m = lo.size();
  std::vector<std::uint64_t> per_pixel(m, 0);
  detail::parallel_for(m, threads, [&](std::size_t x) {
    std::uint64_t count = 0;
    for (std::size_t y = 0; y < m; ++y) {
      count += static_cast<std::uint64_t>((lo[x] >= lo[y]) != (le[x] >= le[y]));
    }
    per_pixel[x] = count;
  });
  const std::uint64_t total = std::accumulate(per_pixel.begin(), per_pixel.end(), std::uint64_t{0});
  return static_cast<double>(total) / static_cast<double>(m);
}

double loe(const ImageRGB& original, const ImageRGB& enhanced, const LoeOptions& options) {
  require_same_shape(original, enhanced, "loe");
  ImagePlane lo = bright_channel(original);
  ImagePlane le = bright_channel(enhanced);
  const std::size_t longer = std::max(lo.height(), lo.width());
  if (options.max_side > 0 && longer > static_cast<std::size_t>(options.max_side)) {
    const auto side = static_cast<std::size_t>(options.max_side);
    const auto h = std::max<std::size_t>(1, lo.height() * side / longer);
    const auto w = std::max<std::size_t>(1, lo.width() * side / longer);
    lo = downsample_nearest(lo, h, w);
    le = downsample_nearest(le, h, w);
  }
  return loe_from_lightness(lo, le, options.threads);
}

MetricReport evaluate(const ImageRGB& a, const ImageRGB& b, const LoeOptions& loe_options) {
  return {psnr(a, b), ssim(a, b), delta_e(a, b), loe(a, b, loe_options)};
}

}  // namespace nlhd
