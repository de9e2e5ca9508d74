#pragma once

#include <vector>

#include "saism/feasibility/feasibility.hpp"
#include "saism/tomo/image.hpp"

namespace saism::tomo {

/// Isotropic total variation with backward differences and a zero boundary
/// above the first row and left of the first column:
///   TV(x) = sum_{i,j} sqrt((x_{i,j} - x_{i-1,j})^2 + (x_{i,j} - x_{i,j-1})^2).
double total_variation(const Image& x);

/// Gradient of the TV sum where it exists. Each of the three parcels touching
/// a pixel is dropped when its square root vanishes, and parcels beyond the
/// last row or column do not exist.
std::vector<double> total_variation_subgradient(const Image& x);

/// h(x) = TV(x) - tau on images of the given shape.
ConstraintFunction total_variation_constraint(std::size_t rows, std::size_t cols,
                                              double tau, double relaxation);

}  // namespace saism::tomo
