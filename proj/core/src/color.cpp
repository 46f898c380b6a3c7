#include "nlhd/color.hpp"

#include <algorithm>
#include <cmath>

namespace nlhd {

namespace {

// sRGB primaries, D65 (IEC 61966-2-1).
constexpr double kRgbToXyz[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
};

// White point taken as the image of RGB (1,1,1) so that neutral inputs land
// exactly on the a = b = 0 axis.
constexpr double kWhiteX = kRgbToXyz[0][0] + kRgbToXyz[0][1] + kRgbToXyz[0][2];
constexpr double kWhiteY = kRgbToXyz[1][0] + kRgbToXyz[1][1] + kRgbToXyz[1][2];
constexpr double kWhiteZ = kRgbToXyz[2][0] + kRgbToXyz[2][1] + kRgbToXyz[2][2];

constexpr double kDelta = 6.0 / 29.0;

double srgb_to_linear(double c) {
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double lab_f(double t) {
  return t > kDelta * kDelta * kDelta ? std::cbrt(t) : t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

void require_space(const ColorTriple& c, ColorSpace space, const char* fn) {
  if (c.space != space) {
    throw ImageError(std::string(fn) + ": input triple is in the wrong color space");
  }
}

std::array<double, 3> hsv_from_rgb(double r, double g, double b) {
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double chroma = mx - mn;
  double h = 0.0;
  if (chroma > 0.0) {
    if (mx == r) {
      h = 60.0 * ((g - b) / chroma);
    } else if (mx == g) {
      h = 60.0 * ((b - r) / chroma + 2.0);
    } else {
      h = 60.0 * ((r - g) / chroma + 4.0);
    }
    if (h < 0.0) h += 360.0;
    if (h >= 360.0) h -= 360.0;
  }
  const double s = mx > 0.0 ? chroma / mx : 0.0;
  return {h, s, mx};
}

std::array<double, 3> rgb_from_hsv(double h, double s, double v) {
  if (s <= 0.0) return {v, v, v};
  double hh = std::fmod(h, 360.0);
  if (hh < 0.0) hh += 360.0;
  hh /= 60.0;
  const int sector = std::min(static_cast<int>(hh), 5);
  const double f = hh - sector;
  const double p = v * (1.0 - s);
  const double q = v * (1.0 - s * f);
  const double t = v * (1.0 - s * (1.0 - f));
  switch (sector) {
    case 0: return {v, t, p};
    case 1: return {q, v, p};
    case 2: return {p, v, t};
    case 3: return {p, q, v};
    case 4: return {t, p, v};
    default: return {v, p, q};
  }
}

std::array<double, 3> lab_from_rgb(double r, double g, double b) {
  const double lr = srgb_to_linear(r);
  const double lg = srgb_to_linear(g);
  const double lb = srgb_to_linear(b);
  const double x = kRgbToXyz[0][0] * lr + kRgbToXyz[0][1] * lg + kRgbToXyz[0][2] * lb;
  const double y = kRgbToXyz[1][0] * lr + kRgbToXyz[1][1] * lg + kRgbToXyz[1][2] * lb;
  const double z = kRgbToXyz[2][0] * lr + kRgbToXyz[2][1] * lg + kRgbToXyz[2][2] * lb;
  const double fx = lab_f(x / kWhiteX);
  const double fy = lab_f(y / kWhiteY);
  const double fz = lab_f(z / kWhiteZ);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

}  // namespace

ColorTriple rgb_to_hsv(const ColorTriple& c) {
  require_space(c, ColorSpace::RGB, "rgb_to_hsv");
  return {hsv_from_rgb(c[0], c[1], c[2]), ColorSpace::HSV};
}

ColorTriple hsv_to_rgb(const ColorTriple& c) {
  require_space(c, ColorSpace::HSV, "hsv_to_rgb");
  return {rgb_from_hsv(c[0], c[1], c[2]), ColorSpace::RGB};
}

ColorTriple rgb_to_lab(const ColorTriple& c) {
  require_space(c, ColorSpace::RGB, "rgb_to_lab");
  return {lab_from_rgb(c[0], c[1], c[2]), ColorSpace::Lab};
}

HsvPlanes rgb_to_hsv(const ImageRGB& img) {
  HsvPlanes out{ImagePlane(img.height(), img.width()), ImagePlane(img.height(), img.width()),
                ImagePlane(img.height(), img.width())};
  auto r = img.r().values();
  auto g = img.g().values();
  auto b = img.b().values();
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto hsv = hsv_from_rgb(r[i], g[i], b[i]);
    out.h.values()[i] = hsv[0];
    out.s.values()[i] = hsv[1];
    out.v.values()[i] = hsv[2];
  }
  return out;
}

ImageRGB hsv_to_rgb(const HsvPlanes& planes) {
  require_same_shape(planes.h, planes.s, "hsv_to_rgb");
  require_same_shape(planes.h, planes.v, "hsv_to_rgb");
  ImageRGB out(planes.h.height(), planes.h.width());
  auto h = planes.h.values();
  auto s = planes.s.values();
  auto v = planes.v.values();
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto c = rgb_from_hsv(h[i], s[i], v[i]);
    out.r().values()[i] = c[0];
    out.g().values()[i] = c[1];
    out.b().values()[i] = c[2];
  }
  return out;
}

LabPlanes rgb_to_lab(const ImageRGB& img) {
  LabPlanes out{ImagePlane(img.height(), img.width()), ImagePlane(img.height(), img.width()),
                ImagePlane(img.height(), img.width())};
  auto r = img.r().values();
  auto g = img.g().values();
  auto b = img.b().values();
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto lab = lab_from_rgb(r[i], g[i], b[i]);
    out.l.values()[i] = lab[0];
    out.a.values()[i] = lab[1];
    out.b.values()[i] = lab[2];
  }
  return out;
}

}  // namespace nlhd
