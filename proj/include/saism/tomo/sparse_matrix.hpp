#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace saism::tomo {

/// Compressed sparse row matrix with direct row access.
class SparseMatrix {
 public:
  struct Row {
    std::span<const std::size_t> cols;
    std::span<const double> values;
  };

  SparseMatrix() = default;
  /// Validates the CSR arrays: monotone offsets, in-range columns sorted within
  /// each row.
  SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> offsets,
               std::vector<std::size_t> indices, std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const { return values_.size(); }

  Row row(std::size_t i) const;
  double row_dot(std::size_t i, std::span<const double> x) const;
  double row_sum(std::size_t i) const;
  double row_squared_norm(std::size_t i) const;

  /// y = A x.
  std::vector<double> apply(std::span<const double> x) const;
  /// x = A^T y.
  std::vector<double> apply_transpose(std::span<const double> y) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::size_t> indices_;
  std::vector<double> values_;
};

}  // namespace saism::tomo
