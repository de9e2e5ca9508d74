#include "saism/harness/metrics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "saism/core/vector_ops.hpp"

namespace saism::harness {

double relative_squared_error(std::span<const double> x, std::span<const double> truth) {
  if (x.size() != truth.size()) throw std::invalid_argument("RSE: size mismatch");
  const double ref = squared_norm(truth);
  if (ref == 0.0) throw std::invalid_argument("RSE: ground truth is identically zero");
  return squared_distance(x, truth) / ref;
}

std::vector<double> profile_line(const tomo::Image& image, std::size_t column) {
  if (column >= image.cols())
    throw std::out_of_range("profile column " + std::to_string(column) + " outside image of " +
                            std::to_string(image.cols()) + " columns");
  std::vector<double> out(image.rows());
  for (std::size_t i = 0; i < image.rows(); ++i) out[i] = image(i, column);
  return out;
}

std::optional<RunRecord> first_below(std::span<const RunRecord> records, double threshold) {
  for (const auto& r : records)
    if (r.f <= threshold) return r;
  return std::nullopt;
}

std::vector<double> best_so_far(std::span<const RunRecord> records) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(out.empty() ? r.f : std::min(out.back(), r.f));
  return out;
}

}  // namespace saism::harness
