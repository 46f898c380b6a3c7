#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlhd {

/// Raised when image dimensions or contents violate a precondition.
class ImageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Row-major single-channel raster of doubles.
///
/// A default-constructed plane is empty (0x0) and only useful as a placeholder;
/// every other constructor requires height >= 1 and width >= 1. Values are
/// nominally in [0,1], but intermediate planes (reflectance, enhanced
/// illumination) may leave that range.
class ImagePlane {
public:
  ImagePlane() = default;
  ImagePlane(std::size_t height, std::size_t width, double fill = 0.0);
  ImagePlane(std::size_t height, std::size_t width, std::vector<double> data);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t y, std::size_t x) noexcept { return data_[y * width_ + x]; }
  double operator()(std::size_t y, std::size_t x) const noexcept { return data_[y * width_ + x]; }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  double mean() const;
  double min() const;
  double max() const;

  bool same_shape(const ImagePlane& other) const noexcept {
    return height_ == other.height_ && width_ == other.width_;
  }

  friend bool operator==(const ImagePlane&, const ImagePlane&) = default;

private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<double> data_;
};

enum class Channel { R = 0, G = 1, B = 2 };

inline constexpr std::array<Channel, 3> kChannels{Channel::R, Channel::G, Channel::B};

const char* to_string(Channel channel) noexcept;

/// Three planes of identical shape holding R, G and B.
class ImageRGB {
public:
  ImageRGB() = default;
  ImageRGB(std::size_t height, std::size_t width, double fill = 0.0);
  ImageRGB(ImagePlane r, ImagePlane g, ImagePlane b);

  std::size_t height() const noexcept { return planes_[0].height(); }
  std::size_t width() const noexcept { return planes_[0].width(); }
  std::size_t pixel_count() const noexcept { return planes_[0].size(); }
  bool empty() const noexcept { return planes_[0].empty(); }

  ImagePlane& channel(Channel c) noexcept { return planes_[static_cast<std::size_t>(c)]; }
  const ImagePlane& channel(Channel c) const noexcept { return planes_[static_cast<std::size_t>(c)]; }
  ImagePlane& operator[](std::size_t i) noexcept { return planes_[i]; }
  const ImagePlane& operator[](std::size_t i) const noexcept { return planes_[i]; }

  ImagePlane& r() noexcept { return planes_[0]; }
  ImagePlane& g() noexcept { return planes_[1]; }
  ImagePlane& b() noexcept { return planes_[2]; }
  const ImagePlane& r() const noexcept { return planes_[0]; }
  const ImagePlane& g() const noexcept { return planes_[1]; }
  const ImagePlane& b() const noexcept { return planes_[2]; }

  /// Mean over all samples of all three planes.
  double mean() const;

  bool same_shape(const ImageRGB& other) const noexcept { return planes_[0].same_shape(other.planes_[0]); }

  friend bool operator==(const ImageRGB&, const ImageRGB&) = default;

private:
  std::array<ImagePlane, 3> planes_;
};

/// Throws ImageError naming `what` when the shapes differ.
void require_same_shape(const ImagePlane& a, const ImagePlane& b, const char* what);
void require_same_shape(const ImageRGB& a, const ImageRGB& b, const char* what);

/// Pixelwise max(R,G,B), the "bright channel".
ImagePlane bright_channel(const ImageRGB& img);

/// Grayscale plane replicated into three channels.
ImageRGB gray_to_rgb(const ImagePlane& plane);

}  // namespace nlhd
