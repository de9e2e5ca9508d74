#include "saism/tomo/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace saism::tomo {

const std::array<Ellipse, 10>& shepp_logan_ellipses() {
  static const std::array<Ellipse, 10> table{{
      {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
      {-0.8, 0.6624, 0.874, 0.0, -0.0184, 0.0},
      {-0.2, 0.11, 0.31, 0.22, 0.0, -18.0},
      {-0.2, 0.16, 0.41, -0.22, 0.0, 18.0},
      {0.1, 0.21, 0.25, 0.0, 0.35, 0.0},
      {0.1, 0.046, 0.046, 0.0, 0.1, 0.0},
      {0.1, 0.046, 0.046, 0.0, -0.1, 0.0},
      {0.1, 0.046, 0.023, -0.08, -0.605, 0.0},
      {0.1, 0.023, 0.023, 0.0, -0.606, 0.0},
      {0.1, 0.023, 0.046, 0.06, -0.605, 0.0},
  }};
  return table;
}

Image shepp_logan(std::size_t rows, std::size_t cols) {
  if (rows < 8 || cols < 8) throw std::invalid_argument("phantom needs at least 8x8 pixels");
  Image img(rows, cols, 0.0);
  const auto& table = shepp_logan_ellipses();
  for (std::size_t i = 0; i < rows; ++i) {
    const double y = img.center_y(i);
    for (std::size_t j = 0; j < cols; ++j) {
      const double x = img.center_x(j);
      double v = 0.0;
      for (const auto& e : table) {
        const double phi = e.rotation_deg * std::numbers::pi / 180.0;
        const double c = std::cos(phi), s = std::sin(phi);
        const double u = ((x - e.center_x) * c + (y - e.center_y) * s) / e.semi_axis_x;
        const double w = (-(x - e.center_x) * s + (y - e.center_y) * c) / e.semi_axis_y;
        if (u * u + w * w <= 1.0) v += e.intensity;
      }
      // Overlapping ellipses cancel to zero only up to rounding.
      img(i, j) = std::clamp(v, 0.0, 1.0);
    }
  }
  return img;
}

}  // namespace saism::tomo
