#include "saism/tomo/radon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <omp.h>

namespace saism::tomo {

double RadonGeometry::angle(std::size_t view) const {
  return static_cast<double>(view) * std::numbers::pi / static_cast<double>(views);
}

double RadonGeometry::offset(std::size_t bin) const {
  return -1.0 + (static_cast<double>(bin) + 0.5) * 2.0 / static_cast<double>(bins);
}

void RadonGeometry::validate() const {
  if (rows == 0 || cols == 0 || views == 0 || bins == 0)
    throw std::invalid_argument("Radon geometry needs positive image size, views and bins");
}

namespace {

// Axis components below this are treated as exactly zero (e.g. cos(pi/2)).
constexpr double kParallelEps = 1e-12;
constexpr double kMinSegment = 1e-14;

// Parameters u in (lo, hi) where p + u d crosses the grid lines
// -1 + k * 2 / cells, in increasing order of u.
void grid_crossings(double p, double d, std::size_t cells, double lo, double hi,
                    std::vector<double>& out) {
  out.clear();
  if (std::abs(d) < kParallelEps) return;
  const double h = 2.0 / static_cast<double>(cells);
  for (std::size_t k = 0; k <= cells; ++k) {
    const double line = -1.0 + static_cast<double>(k) * h;
    const double u = (line - p) / d;
    if (u > lo && u < hi) out.push_back(u);
  }
  if (d < 0.0) std::reverse(out.begin(), out.end());
}

// Clips p + u d to [-1, 1] along one axis.
bool clip_axis(double p, double d, double& lo, double& hi) {
  if (std::abs(d) < kParallelEps) return p >= -1.0 && p <= 1.0;
  double a = (-1.0 - p) / d;
  double b = (1.0 - p) / d;
  if (a > b) std::swap(a, b);
  lo = std::max(lo, a);
  hi = std::min(hi, b);
  return true;
}

}  // namespace

RayIntersections trace_ray(const RadonGeometry& g, double theta, double t) {
  const double px = t * std::cos(theta), py = t * std::sin(theta);
  const double dx = -std::sin(theta), dy = std::cos(theta);

  RayIntersections out;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  if (!clip_axis(px, dx, lo, hi) || !clip_axis(py, dy, lo, hi) || !(hi > lo)) return out;

  std::vector<double> ux, uy;
  grid_crossings(px, dx, g.cols, lo, hi, ux);
  grid_crossings(py, dy, g.rows, lo, hi, uy);

  std::vector<double> cuts;
  cuts.reserve(ux.size() + uy.size() + 2);
  cuts.push_back(lo);
  std::merge(ux.begin(), ux.end(), uy.begin(), uy.end(), std::back_inserter(cuts));
  cuts.push_back(hi);

  const double hx = 2.0 / static_cast<double>(g.cols);
  const double hy = 2.0 / static_cast<double>(g.rows);
  std::vector<std::pair<std::size_t, double>> hits;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double len = cuts[k + 1] - cuts[k];
    if (len <= kMinSegment) continue;
    const double um = 0.5 * (cuts[k] + cuts[k + 1]);
    const double x = px + um * dx, y = py + um * dy;
    const auto col = static_cast<std::ptrdiff_t>(std::floor((x + 1.0) / hx));
    const auto row = static_cast<std::ptrdiff_t>(std::floor((1.0 - y) / hy));
    const auto c = static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(col, 0, static_cast<std::ptrdiff_t>(g.cols) - 1));
    const auto r = static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(row, 0, static_cast<std::ptrdiff_t>(g.rows) - 1));
    hits.emplace_back(r * g.cols + c, len);
  }
  std::sort(hits.begin(), hits.end());
  for (const auto& [pixel, len] : hits) {
    if (!out.pixels.empty() && out.pixels.back() == pixel) {
      out.lengths.back() += len;
    } else {
      out.pixels.push_back(pixel);
      out.lengths.push_back(len);
    }
  }
  return out;
}

SparseMatrix build_radon(const RadonGeometry& g, std::size_t threads) {
  g.validate();
  const std::size_t m = g.measurement_count();
  std::vector<RayIntersections> rays(m);
  const int nt = static_cast<int>(std::max<std::size_t>(1, threads));

#pragma omp parallel for num_threads(nt) schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(m); ++i) {
    const std::size_t v = static_cast<std::size_t>(i) / g.bins;
    const std::size_t d = static_cast<std::size_t>(i) % g.bins;
    rays[i] = trace_ray(g, g.angle(v), g.offset(d));
  }

  std::vector<std::size_t> offsets(m + 1, 0);
  for (std::size_t i = 0; i < m; ++i) offsets[i + 1] = offsets[i] + rays[i].pixels.size();
  std::vector<std::size_t> indices;
  std::vector<double> values;
  indices.reserve(offsets[m]);
  values.reserve(offsets[m]);
  for (auto& r : rays) {
    indices.insert(indices.end(), r.pixels.begin(), r.pixels.end());
    values.insert(values.end(), r.lengths.begin(), r.lengths.end());
  }
  return SparseMatrix(m, g.pixel_count(), std::move(offsets), std::move(indices),
                      std::move(values));
}

}  // namespace saism::tomo
