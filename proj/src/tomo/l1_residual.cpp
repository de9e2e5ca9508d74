#include "saism/tomo/l1_residual.hpp"

#include <cmath>
#include <stdexcept>

#include "saism/core/vector_ops.hpp"

namespace saism::tomo {

L1ResidualComponents::L1ResidualComponents(std::shared_ptr<const SparseMatrix> matrix,
                                           std::vector<double> data)
    : matrix_(std::move(matrix)), data_(std::move(data)) {
  if (!matrix_) throw std::invalid_argument("null projector");
  if (data_.size() != matrix_->rows())
    throw std::invalid_argument("data length does not match projector rows");
}

double L1ResidualComponents::value(std::size_t i, std::span<const double> x) const {
  return std::abs(matrix_->row_dot(i, x) - data_[i]);
}

void L1ResidualComponents::subgradient(std::size_t i, std::span<const double> x,
                                       std::span<double> g) const {
  std::fill(g.begin(), g.end(), 0.0);
  const double s = sign(matrix_->row_dot(i, x) - data_[i]);
  if (s == 0.0) return;
  const auto row = matrix_->row(i);
  for (std::size_t k = 0; k < row.cols.size(); ++k) g[row.cols[k]] = s * row.values[k];
}

void L1ResidualComponents::step(std::size_t i, std::span<double> x, double step) const {
  const double s = sign(matrix_->row_dot(i, x) - data_[i]);
  if (s == 0.0) return;
  const double t = step * s;
  const auto row = matrix_->row(i);
  for (std::size_t k = 0; k < row.cols.size(); ++k) x[row.cols[k]] -= t * row.values[k];
}

double L1ResidualComponents::residual_l1(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) s += std::abs(matrix_->row_dot(i, x) - data_[i]);
  return s;
}

}  // namespace saism::tomo
