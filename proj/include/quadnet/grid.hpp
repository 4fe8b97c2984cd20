#pragma once

// Rectangular complex window sampled at pixel centers, row 0 at the top.

#include <complex>
#include <stdexcept>

namespace quadnet {

struct GridSpec {
  double re_min = -2.0, re_max = 1.0;
  double im_min = -1.5, im_max = 1.5;
  int width = 200, height = 200;

  void validate() const {
    if (!(re_min < re_max) || !(im_min < im_max))
      throw std::invalid_argument("grid: window bounds must be increasing");
    if (width <= 0 || height <= 0) throw std::invalid_argument("grid: resolution must be positive");
  }

  double pixel_width() const { return (re_max - re_min) / width; }
  double pixel_height() const { return (im_max - im_min) / height; }

  // Pixel-center mapping; bit-exact by fixing the evaluation order.
  double re_at(int x) const { return re_min + (x + 0.5) * (re_max - re_min) / width; }
  double im_at(int y) const { return im_max - (y + 0.5) * (im_max - im_min) / height; }
  std::complex<double> at(int x, int y) const { return {re_at(x), im_at(y)}; }

  long long pixel_count() const { return static_cast<long long>(width) * height; }
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }

  // Pixel containing a point (clamped to the window edge pixels).
  int col_containing(double re) const {
    int x = static_cast<int>((re - re_min) / (re_max - re_min) * width);
    return x < 0 ? 0 : (x >= width ? width - 1 : x);
  }
  int row_containing(double im) const {
    int y = static_cast<int>((im_max - im) / (im_max - im_min) * height);
    return y < 0 ? 0 : (y >= height ? height - 1 : y);
  }
};

}  // namespace quadnet
