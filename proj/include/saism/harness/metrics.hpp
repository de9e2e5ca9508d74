#pragma once

#include <optional>
#include <span>
#include <vector>

#include "saism/core/solver.hpp"
#include "saism/tomo/image.hpp"

namespace saism::harness {

/// |x - truth|^2 / |truth|^2. Throws when truth is identically zero.
double relative_squared_error(std::span<const double> x, std::span<const double> truth);

/// Pixel values down one image column, top to bottom.
std::vector<double> profile_line(const tomo::Image& image, std::size_t column);

/// First record whose objective is at or below `threshold`.
std::optional<RunRecord> first_below(std::span<const RunRecord> records, double threshold);

/// Running minimum of f over the records.
std::vector<double> best_so_far(std::span<const RunRecord> records);

}  // namespace saism::harness
