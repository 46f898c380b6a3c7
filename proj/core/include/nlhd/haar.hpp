#pragma once

#include <span>

#include "nlhd/matrix.hpp"

namespace nlhd {

/// Coefficients of the separable orthonormal Haar transform of a group.
///
/// Entry (0,0) is the DC term, sqrt(rows*cols) times the group mean. Along each
/// axis the coefficients run from DC through the coarsest detail to the finest.
class HaarSpectrum {
public:
  HaarSpectrum() = default;
  explicit HaarSpectrum(Matrix coeffs) : coeffs_(std::move(coeffs)) {}

  const Matrix& coefficients() const noexcept { return coeffs_; }
  Matrix& coefficients() noexcept { return coeffs_; }

  std::size_t rows() const noexcept { return coeffs_.rows(); }
  std::size_t cols() const noexcept { return coeffs_.cols(); }

  double dc() const noexcept { return coeffs_(0, 0); }

private:
  Matrix coeffs_;
};

/// In-place full-depth orthonormal 1-D Haar transform. `scratch` must be at
/// least as long as `data`. Length must be a power of two.
void haar_forward_1d(std::span<double> data, std::span<double> scratch);
void haar_inverse_1d(std::span<double> data, std::span<double> scratch);

/// Column transform (length rows) then row transform (length cols).
/// Throws std::invalid_argument unless both dimensions are powers of two.
HaarSpectrum haar_forward(const Matrix& group);
Matrix haar_inverse(const HaarSpectrum& spectrum);

/// Inverse of the DC coefficient alone: a constant matrix equal to the group mean.
Matrix reconstruct_low(const HaarSpectrum& spectrum);

/// Inverse of every coefficient except DC: the group minus its mean.
Matrix reconstruct_high(const HaarSpectrum& spectrum);

}  // namespace nlhd
