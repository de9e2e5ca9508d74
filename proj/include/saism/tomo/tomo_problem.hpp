#pragma once

#include <cstdint>
#include <memory>

#include "saism/core/solver.hpp"
#include "saism/tomo/image.hpp"
#include "saism/tomo/l1_residual.hpp"
#include "saism/tomo/radon.hpp"
#include "saism/tomo/sinogram.hpp"

namespace saism::tomo {

std::shared_ptr<const L1ResidualComponents> l1_components(
    std::shared_ptr<const SparseMatrix> radon, std::vector<double> data);

/// Constant image with value sum(b) / sum_i <r_i, 1>, so that the projections
/// of x0 and the data have the same total. Throws when R has no mass.
Image initial_image(const SparseMatrix& radon, std::span<const double> data,
                    std::size_t rows, std::size_t cols);

struct TomoSettings {
  std::size_t strings = 1;
  std::uint64_t partition_seed = 0;
  double tau = 0.0;         // TV budget
  double relaxation = 1.0;  // relaxation of the TV projection step
  double sigma = FeasibilityOperator::default_sigma;
};

/// min |R x - b|_1  s.t.  TV(x) <= tau, x >= 0, packaged for the solver:
/// one component per measurement, rows split into randomly ordered strings,
/// and feasibility = (orthant projection) after (TV subgradient projection).
struct TomoProblem {
  RadonGeometry geometry;
  std::shared_ptr<const SparseMatrix> radon;
  Sinogram data;
  TomoSettings settings;
  std::shared_ptr<const L1ResidualComponents> residual;
  Problem problem;
};

TomoProblem make_tomo_problem(const RadonGeometry& geometry,
                              std::shared_ptr<const SparseMatrix> radon, Sinogram data,
                              const TomoSettings& settings);

}  // namespace saism::tomo
