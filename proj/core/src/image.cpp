#include "nlhd/image.hpp"

#include <algorithm>
#include <numeric>

namespace nlhd {

ImagePlane::ImagePlane(std::size_t height, std::size_t width, double fill)
    : height_(height), width_(width) {
  if (height == 0 || width == 0) {
    throw ImageError("ImagePlane: zero dimension");
  }
  data_.assign(height * width, fill);
}

ImagePlane::ImagePlane(std::size_t height, std::size_t width, std::vector<double> data)
    : height_(height), width_(width), data_(std::move(data)) {
  if (height == 0 || width == 0) {
    throw ImageError("ImagePlane: zero dimension");
  }
  if (data_.size() != height * width) {
    throw ImageError("ImagePlane: data length " + std::to_string(data_.size()) + " != " +
                     std::to_string(height) + "x" + std::to_string(width));
  }
}

double ImagePlane::mean() const {
  if (data_.empty()) return 0.0;
  return std::accumulate(data_.begin(), data_.end(), 0.0) / static_cast<double>(data_.size());
}

double ImagePlane::min() const {
  if (data_.empty()) return 0.0;
  return *std::min_element(data_.begin(), data_.end());
}

double ImagePlane::max() const {
  if (data_.empty()) return 0.0;
  return *std::max_element(data_.begin(), data_.end());
}

const char* to_string(Channel channel) noexcept {
  switch (channel) {
    case Channel::R: return "R";
    case Channel::G: return "G";
    case Channel::B: return "B";
  }
  return "?";
}

ImageRGB::ImageRGB(std::size_t height, std::size_t width, double fill)
    : planes_{ImagePlane(height, width, fill), ImagePlane(height, width, fill),
              ImagePlane(height, width, fill)} {}

ImageRGB::ImageRGB(ImagePlane r, ImagePlane g, ImagePlane b)
    : planes_{std::move(r), std::move(g), std::move(b)} {
  if (planes_[0].empty()) {
    throw ImageError("ImageRGB: empty plane");
  }
  if (!planes_[0].same_shape(planes_[1]) || !planes_[0].same_shape(planes_[2])) {
    throw ImageError("ImageRGB: channel planes differ in shape");
  }
}

double ImageRGB::mean() const {
  double sum = 0.0;
  for (const auto& p : planes_) {
    sum = std::accumulate(p.values().begin(), p.values().end(), sum);
  }
  return sum / static_cast<double>(3 * pixel_count());
}

void require_same_shape(const ImagePlane& a, const ImagePlane& b, const char* what) {
  if (!a.same_shape(b)) {
    throw ImageError(std::string(what) + ": shape mismatch (" + std::to_string(a.height()) + "x" +
                     std::to_string(a.width()) + " vs " + std::to_string(b.height()) + "x" +
                     std::to_string(b.width()) + ")");
  }
}

void require_same_shape(const ImageRGB& a, const ImageRGB& b, const char* what) {
  require_same_shape(a.r(), b.r(), what);
}

ImagePlane bright_channel(const ImageRGB& img) {
  ImagePlane out(img.height(), img.width());
  auto r = img.r().values();
  auto g = img.g().values();
  auto b = img.b().values();
  auto o = out.values();
  for (std::size_t i = 0; i < o.size(); ++i) {
    o[i] = std::max({r[i], g[i], b[i]});
  }
  return out;
}

ImageRGB gray_to_rgb(const ImagePlane& plane) { return ImageRGB(plane, plane, plane); }

}  // namespace nlhd
