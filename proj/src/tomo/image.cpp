#include "saism/tomo/image.hpp"

#include <stdexcept>
#include <string>

namespace saism::tomo {

Image::Image(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

Image::Image(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows * cols)
    throw std::invalid_argument("image of " + std::to_string(rows) + "x" +
                                std::to_string(cols) + " needs " +
                                std::to_string(rows * cols) + " values, got " +
                                std::to_string(values_.size()));
}

double Image::center_x(std::size_t j) const {
  return -1.0 + (static_cast<double>(j) + 0.5) * pixel_width();
}

double Image::center_y(std::size_t i) const {
  return 1.0 - (static_cast<double>(i) + 0.5) * pixel_height();
}

}  // namespace saism::tomo
