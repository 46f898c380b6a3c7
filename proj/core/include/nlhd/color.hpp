#pragma once

#include <array>

#include "nlhd/image.hpp"

namespace nlhd {

enum class ColorSpace { RGB, HSV, Lab };

/// A single color value tagged with the space it lives in.
///
/// HSV: hue in degrees [0,360), saturation and value in [0,1].
/// Lab: CIE 1976 L*a*b* relative to D65, L in [0,100].
struct ColorTriple {
  std::array<double, 3> v{};
  ColorSpace space = ColorSpace::RGB;

  double operator[](std::size_t i) const noexcept { return v[i]; }
  double& operator[](std::size_t i) noexcept { return v[i]; }
};

inline ColorTriple rgb(double r, double g, double b) { return {{r, g, b}, ColorSpace::RGB}; }
inline ColorTriple hsv(double h, double s, double v) { return {{h, s, v}, ColorSpace::HSV}; }

// Pixel-level conversions. Each throws ImageError when handed the wrong space.
ColorTriple rgb_to_hsv(const ColorTriple& c);
ColorTriple hsv_to_rgb(const ColorTriple& c);
ColorTriple rgb_to_lab(const ColorTriple& c);

struct HsvPlanes {
  ImagePlane h;
  ImagePlane s;
  ImagePlane v;
};

struct LabPlanes {
  ImagePlane l;
  ImagePlane a;
  ImagePlane b;
};

HsvPlanes rgb_to_hsv(const ImageRGB& img);
ImageRGB hsv_to_rgb(const HsvPlanes& planes);
LabPlanes rgb_to_lab(const ImageRGB& img);

}  // namespace nlhd
