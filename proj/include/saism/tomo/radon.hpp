#pragma once

#include <cstddef>
#include <vector>

#include "saism/tomo/sparse_matrix.hpp"

namespace saism::tomo {

/// Parallel-beam sampling of the Radon transform over an image on [-1, 1]^2.
///
/// View v has angle theta_v = v pi / views (pi excluded). Detector bin d sits
/// at the bin center t_d = -1 + (d + 1/2) 2 / bins. Row v * bins + d integrates
/// along the line { t (cos theta, sin theta) + s (-sin theta, cos theta) }.
struct RadonGeometry {
  std::size_t rows = 0;  // image rows
  std::size_t cols = 0;  // image columns
  std::size_t views = 0;
  std::size_t bins = 0;

  std::size_t measurement_count() const { return views * bins; }
  std::size_t pixel_count() const { return rows * cols; }
  double angle(std::size_t view) const;
  double offset(std::size_t bin) const;
  void validate() const;
};

/// (column, length) pairs for one line, sorted by column index. Lengths are
/// exact ray-pixel intersection lengths from an incremental grid traversal.
struct RayIntersections {
  std::vector<std::size_t> pixels;
  std::vector<double> lengths;
};

RayIntersections trace_ray(const RadonGeometry& geometry, double theta, double t);

/// Explicit system matrix; rows built in parallel, one traversal per ray.
SparseMatrix build_radon(const RadonGeometry& geometry, std::size_t threads = 1);

}  // namespace saism::tomo
