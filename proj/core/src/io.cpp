#include "nlhd/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

namespace nlhd {

namespace {

enum class Container { Png, Jpeg, Unknown };

Container sniff(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::array<unsigned char, 8> head{};
  in.read(reinterpret_cast<char*>(head.data()), head.size());
  const auto got = static_cast<std::size_t>(in.gcount());
  constexpr std::array<unsigned char, 8> png{0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
  if (got == 8 && head == png) return Container::Png;
  if (got >= 3 && head[0] == 0xFF && head[1] == 0xD8 && head[2] == 0xFF) return Container::Jpeg;
  return Container::Unknown;
}

}  // namespace

unsigned char quantize_u8(double v) noexcept {
  if (!(v > 0.0)) return 0;  // also maps NaN to 0
  if (v >= 1.0) return 255;
  return static_cast<unsigned char>(std::floor(v * 255.0 + 0.5));
}

ImageRGB quantize_image(const ImageRGB& img) {
  ImageRGB out = img;
  for (std::size_t c = 0; c < 3; ++c) {
    for (double& v : out[c].values()) v = quantize_u8(v) / 255.0;
  }
  return out;
}

bool is_supported_image(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) return false;
  return sniff(path) != Container::Unknown;
}

ImageRGB load_image(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw IoError("load_image: no such file: " + path.string());
  }
  if (sniff(path) == Container::Unknown) {
    throw IoError("load_image: not a PNG or JPEG file: " + path.string());
  }

  cv::Mat mat;
  try {
    mat = cv::imread(path.string(),
                     cv::IMREAD_COLOR | cv::IMREAD_ANYDEPTH | cv::IMREAD_IGNORE_ORIENTATION);
  } catch (const cv::Exception& e) {
    throw IoError("load_image: decode failed for " + path.string() + ": " + e.what());
  }
  if (mat.empty() || mat.rows == 0 || mat.cols == 0) {
    throw IoError("load_image: could not decode " + path.string());
  }

  double scale = 0.0;
  switch (mat.depth()) {
    case CV_8U: scale = 255.0; break;
    case CV_16U: scale = 65535.0; break;
    default: throw IoError("load_image: unsupported sample depth in " + path.string());
  }

  cv::Mat samples;
  mat.convertTo(samples, CV_64FC3, 1.0 / scale);

  const auto h = static_cast<std::size_t>(samples.rows);
  const auto w = static_cast<std::size_t>(samples.cols);
  ImageRGB out(h, w);
  for (std::size_t y = 0; y < h; ++y) {
    const auto* row = samples.ptr<cv::Vec3d>(static_cast<int>(y));
    for (std::size_t x = 0; x < w; ++x) {
      // OpenCV stores BGR.
      out.r()(y, x) = row[x][2];
      out.g()(y, x) = row[x][1];
      out.b()(y, x) = row[x][0];
    }
  }
  return out;
}

void save_image(const ImageRGB& img, const std::filesystem::path& path) {
  if (img.empty()) {
    throw IoError("save_image: empty image");
  }
  cv::Mat mat(static_cast<int>(img.height()), static_cast<int>(img.width()), CV_8UC3);
  for (std::size_t y = 0; y < img.height(); ++y) {
    auto* row = mat.ptr<cv::Vec3b>(static_cast<int>(y));
    for (std::size_t x = 0; x < img.width(); ++x) {
      row[x][0] = quantize_u8(img.b()(y, x));
      row[x][1] = quantize_u8(img.g()(y, x));
      row[x][2] = quantize_u8(img.r()(y, x));
    }
  }

  std::vector<unsigned char> encoded;
  try {
    if (!cv::imencode(".png", mat, encoded)) {
      throw IoError("save_image: PNG encoding failed");
    }
  } catch (const cv::Exception& e) {
    throw IoError(std::string("save_image: PNG encoding failed: ") + e.what());
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("save_image: cannot open for writing: " + path.string());
  }
  out.write(reinterpret_cast<const char*>(encoded.data()),
            static_cast<std::streamsize>(encoded.size()));
  if (!out) {
    throw IoError("save_image: write failed: " + path.string());
  }
}

void save_plane(const ImagePlane& plane, const std::filesystem::path& path) {
  save_image(gray_to_rgb(plane), path);
}

}  // namespace nlhd
