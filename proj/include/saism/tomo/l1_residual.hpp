#pragma once

#include <memory>
#include <vector>

#include "saism/core/components.hpp"
#include "saism/tomo/sparse_matrix.hpp"

namespace saism::tomo {

/// f_i(x) = |<r_i, x> - b_i| over the rows of a sparse matrix. The subgradient
/// is sign(<r_i, x> - b_i) r_i with sign(0) = 0, and incremental steps touch
/// only the row's support.
class L1ResidualComponents final : public ComponentSet {
 public:
  L1ResidualComponents(std::shared_ptr<const SparseMatrix> matrix, std::vector<double> data);

  std::size_t size() const override { return matrix_->rows(); }
  std::size_t dimension() const override { return matrix_->cols(); }
  double value(std::size_t i, std::span<const double> x) const override;
  void subgradient(std::size_t i, std::span<const double> x,
                   std::span<double> g) const override;
  void step(std::size_t i, std::span<double> x, double step) const override;

  const SparseMatrix& matrix() const { return *matrix_; }
  const std::vector<double>& data() const { return data_; }

  /// |R x - b|_1 computed in one pass.
  double residual_l1(std::span<const double> x) const;

 private:
  std::shared_ptr<const SparseMatrix> matrix_;
  std::vector<double> data_;
};

}  // namespace saism::tomo
