#include "nlhd/haar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "nlhd/grouping.hpp"

namespace nlhd {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_dyadic(std::size_t rows, std::size_t cols, const char* fn) {
  if (!is_power_of_two(rows) || !is_power_of_two(cols)) {
    throw std::invalid_argument(std::string(fn) + ": dimensions " + std::to_string(rows) + "x" +
                                std::to_string(cols) + " are not powers of two");
  }
}

// Applies a 1-D transform to every column, then every row, of `m`.
template <class Transform>
void separable(Matrix& m, Transform&& transform, bool columns_first) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<double> column(rows);
  std::vector<double> scratch(std::max(rows, cols));

  auto do_columns = [&] {
    if (rows < 2) return;
    for (std::size_t c = 0; c < cols; ++c) {
      for (std::size_t r = 0; r < rows; ++r) column[r] = m(r, c);
      transform(std::span<double>(column), std::span<double>(scratch));
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = column[r];
    }
  };
  auto do_rows = [&] {
    if (cols < 2) return;
    for (std::size_t r = 0; r < rows; ++r) transform(m.row(r), std::span<double>(scratch));
  };

  if (columns_first) {
    do_columns();
    do_rows();
  } else {
    do_rows();
    do_columns();
  }
}

}  // namespace

void haar_forward_1d(std::span<double> data, std::span<double> scratch) {
  for (std::size_t len = data.size(); len > 1; len /= 2) {
    const std::size_t half = len / 2;
    for (std::size_t i = 0; i < half; ++i) {
      const double a = data[2 * i];
      const double b = data[2 * i + 1];
      scratch[i] = (a + b) * kInvSqrt2;
      scratch[half + i] = (a - b) * kInvSqrt2;
    }
    std::copy_n(scratch.begin(), len, data.begin());
  }
}

void haar_inverse_1d(std::span<double> data, std::span<double> scratch) {
  for (std::size_t len = 2; len <= data.size(); len *= 2) {
    const std::size_t half = len / 2;
    for (std::size_t i = 0; i < half; ++i) {
      const double s = data[i];
      const double d = data[half + i];
      scratch[2 * i] = (s + d) * kInvSqrt2;
      scratch[2 * i + 1] = (s - d) * kInvSqrt2;
    }
    std::copy_n(scratch.begin(), len, data.begin());
  }
}

HaarSpectrum haar_forward(const Matrix& group) {
  require_dyadic(group.rows(), group.cols(), "haar_forward");
  Matrix coeffs = group;
  separable(coeffs, [](std::span<double> d, std::span<double> s) { haar_forward_1d(d, s); }, true);
  return HaarSpectrum(std::move(coeffs));
}

Matrix haar_inverse(const HaarSpectrum& spectrum) {
  const Matrix& c = spectrum.coefficients();
  require_dyadic(c.rows(), c.cols(), "haar_inverse");
  Matrix out = c;
  separable(out, [](std::span<double> d, std::span<double> s) { haar_inverse_1d(d, s); }, false);
  return out;
}

Matrix reconstruct_low(const HaarSpectrum& spectrum) {
  Matrix dc_only(spectrum.rows(), spectrum.cols());
  dc_only(0, 0) = spectrum.dc();
  return haar_inverse(HaarSpectrum(std::move(dc_only)));
}

Matrix reconstruct_high(const HaarSpectrum& spectrum) {
  HaarSpectrum detail = spectrum;
  detail.coefficients()(0, 0) = 0.0;
  return haar_inverse(detail);
}

}  // namespace nlhd
