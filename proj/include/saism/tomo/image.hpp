#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace saism::tomo {

/// Dense row-major pixel grid covering the square [-1, 1]^2.
///
/// Pixel (i, j) is row i (top to bottom) and column j (left to right), stored
/// at index i * cols + j. Its center sits at
///   x = -1 + (j + 1/2) 2 / cols,  y = 1 - (i + 1/2) 2 / rows.
class Image {
 public:
  Image() = default;
  Image(std::size_t rows, std::size_t cols, double fill = 0.0);
  Image(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }

  double& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }

  std::span<double> span() { return values_; }
  std::span<const double> span() const { return values_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double pixel_width() const { return 2.0 / static_cast<double>(cols_); }
  double pixel_height() const { return 2.0 / static_cast<double>(rows_); }
  double center_x(std::size_t j) const;
  double center_y(std::size_t i) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

}  // namespace saism::tomo
