#pragma once

#include <filesystem>
#include <stdexcept>

#include "nlhd/image.hpp"

namespace nlhd {

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Reads an 8- or 16-bit PNG or a JPEG into [0,1] doubles.
///
/// Samples are divided by the container maximum (255 or 65535). Grayscale
/// inputs are replicated into three channels and alpha is dropped.
/// Throws IoError for missing files, other formats and undecodable data.
ImageRGB load_image(const std::filesystem::path& path);

/// Writes an 8-bit RGB PNG regardless of the file extension.
/// Samples are clamped to [0,1] and quantized with round-half-up.
void save_image(const ImageRGB& img, const std::filesystem::path& path);

/// Writes a single plane as a grayscale-looking RGB PNG.
void save_plane(const ImagePlane& plane, const std::filesystem::path& path);

/// clamp(v, 0, 1) then floor(v * 255 + 0.5).
unsigned char quantize_u8(double v) noexcept;

/// The image as save_image would store it, back in [0,1].
ImageRGB quantize_image(const ImageRGB& img);

/// True if the file starts with a PNG or JPEG signature.
bool is_supported_image(const std::filesystem::path& path);

}  // namespace nlhd
