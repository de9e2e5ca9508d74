#include "saism/tomo/sparse_matrix.hpp"

#include <stdexcept>
#include <string>

namespace saism::tomo {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols,
                           std::vector<std::size_t> offsets,
                           std::vector<std::size_t> indices, std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      offsets_(std::move(offsets)),
      indices_(std::move(indices)),
      values_(std::move(values)) {
  if (offsets_.size() != rows_ + 1 || offsets_.front() != 0 ||
      offsets_.back() != values_.size() || indices_.size() != values_.size())
    throw std::invalid_argument("inconsistent CSR arrays");
  for (std::size_t i = 0; i < rows_; ++i) {
    if (offsets_[i] > offsets_[i + 1]) throw std::invalid_argument("CSR offsets decrease");
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
      if (indices_[k] >= cols_)
        throw std::invalid_argument("column " + std::to_string(indices_[k]) +
                                    " out of range in row " + std::to_string(i));
      if (k > offsets_[i] && indices_[k] <= indices_[k - 1])
        throw std::invalid_argument("columns not strictly increasing in row " +
                                    std::to_string(i));
    }
  }
}

SparseMatrix::Row SparseMatrix::row(std::size_t i) const {
  const std::size_t b = offsets_[i], e = offsets_[i + 1];
  return {std::span<const std::size_t>(indices_).subspan(b, e - b),
          std::span<const double>(values_).subspan(b, e - b)};
}

double SparseMatrix::row_dot(std::size_t i, std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) s += values_[k] * x[indices_[k]];
  return s;
}

double SparseMatrix::row_sum(std::size_t i) const {
  double s = 0.0;
  for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) s += values_[k];
  return s;
}

double SparseMatrix::row_squared_norm(std::size_t i) const {
  double s = 0.0;
  for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) s += values_[k] * values_[k];
  return s;
}

std::vector<double> SparseMatrix::apply(std::span<const double> x) const {
  if (x.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
  std::vector<double> y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) y[i] = row_dot(i, x);
  return y;
}

std::vector<double> SparseMatrix::apply_transpose(std::span<const double> y) const {
  if (y.size() != rows_) throw std::invalid_argument("apply_transpose: dimension mismatch");
  std::vector<double> x(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k)
      x[indices_[k]] += values_[k] * y[i];
  return x;
}

}  // namespace saism::tomo
