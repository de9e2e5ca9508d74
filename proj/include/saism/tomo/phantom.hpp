#pragma once

#include <array>
#include <cstddef>

#include "saism/tomo/image.hpp"

namespace saism::tomo {

struct Ellipse {
  double intensity;
  double semi_axis_x;
  double semi_axis_y;
  double center_x;
  double center_y;
  double rotation_deg;
};

/// Ten-ellipse Shepp-Logan head in the high-contrast (Toft) intensity variant,
/// whose values lie in [0, 1].
const std::array<Ellipse, 10>& shepp_logan_ellipses();

/// Rasterizes the phantom by sampling each pixel center. rows, cols >= 8.
Image shepp_logan(std::size_t rows, std::size_t cols);

}  // namespace saism::tomo
