#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>

namespace saism {

/// lambda_k = (1 - rho c_k) lambda0 / (alpha k^s / P + 1).
///
/// `parcels` is the multiplier used when lambda0 is derived from the initial
/// residual (see initial_step_size); it is kept here so a schedule records
/// everything needed to reproduce it.
struct StepSizeSchedule {
  double initial = 1.0;
  double rho = 0.999;
  double alpha = 1.0;
  double decay_exponent = 0.51;
  std::size_t strings = 1;
  std::size_t parcels = 1;

  /// Throws std::invalid_argument on out-of-range constants.
  void validate() const;
};

double next_step_size(const StepSizeSchedule& schedule, std::size_t k, double cosine);

/// Raised when the initial subgradient vanishes: x0 already minimizes f.
class AlreadyOptimal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// scale * parcels * f0 / |g0|^2. Throws AlreadyOptimal when g0 = 0.
double initial_step_size(double f0, std::span<const double> g0, std::size_t parcels,
                         double scale = 1.0);

}  // namespace saism
