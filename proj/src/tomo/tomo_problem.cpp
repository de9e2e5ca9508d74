#include "saism/tomo/tomo_problem.hpp"

#include <stdexcept>

#include "saism/tomo/total_variation.hpp"

namespace saism::tomo {

std::shared_ptr<const L1ResidualComponents> l1_components(
    std::shared_ptr<const SparseMatrix> radon, std::vector<double> data) {
  return std::make_shared<const L1ResidualComponents>(std::move(radon), std::move(data));
}

Image initial_image(const SparseMatrix& radon, std::span<const double> data,
                    std::size_t rows, std::size_t cols) {
  if (radon.cols() != rows * cols)
    throw std::invalid_argument("image shape does not match projector columns");
  if (data.size() != radon.rows())
    throw std::invalid_argument("data length does not match projector rows");
  double mass = 0.0, total = 0.0;
  for (std::size_t i = 0; i < radon.rows(); ++i) mass += radon.row_sum(i);
  for (double b : data) total += b;
  if (!(mass > 0.0)) throw std::invalid_argument("projector has no mass; cannot scale x0");
  return Image(rows, cols, total / mass);
}

TomoProblem make_tomo_problem(const RadonGeometry& geometry,
                              std::shared_ptr<const SparseMatrix> radon, Sinogram data,
                              const TomoSettings& settings) {
  geometry.validate();
  data.validate();
  if (!radon) throw std::invalid_argument("null projector");
  if (radon->rows() != geometry.measurement_count() ||
      radon->cols() != geometry.pixel_count())
    throw std::invalid_argument("projector shape does not match geometry");
  if (data.views != geometry.views || data.bins != geometry.bins)
    throw std::invalid_argument("sinogram shape does not match geometry");
  if (!(settings.tau > 0.0)) throw std::invalid_argument("TV budget tau must be positive");

  TomoProblem tp;
  tp.geometry = geometry;
  tp.radon = radon;
  tp.data = data;
  tp.settings = settings;
  tp.residual = l1_components(radon, data.values);

  std::vector<FeasibilityStep> steps;
  steps.emplace_back(total_variation_constraint(geometry.rows, geometry.cols, settings.tau,
                                                settings.relaxation));
  steps.emplace_back(NonnegativeProjection{});

  tp.problem.components = tp.residual;
  tp.problem.feasibility = FeasibilityOperator::sequential(std::move(steps), settings.sigma);
  tp.problem.partition = make_random_partition(radon->rows(), settings.strings,
                                               settings.partition_seed);
  tp.problem.validate();
  return tp;
}

}  // namespace saism::tomo
