#include "saism/core/step_size.hpp"

#include <cmath>
#include <string>

#include "saism/core/vector_ops.hpp"

namespace saism {

void StepSizeSchedule::validate() const {
  if (!(initial > 0.0 && std::isfinite(initial)))
    throw std::invalid_argument("initial step size must be positive and finite");
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in [0, 1)");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(decay_exponent > 0.0 && decay_exponent <= 1.0))
    throw std::invalid_argument("decay exponent must lie in (0, 1]");
  if (strings == 0) throw std::invalid_argument("string count must be positive");
  if (parcels == 0) throw std::invalid_argument("parcel count must be positive");
}

double next_step_size(const StepSizeSchedule& schedule, std::size_t k, double cosine) {
  const double kk = static_cast<double>(k);
  const double denom =
      schedule.alpha * std::pow(kk, schedule.decay_exponent) /
          static_cast<double>(schedule.strings) +
      1.0;
  return (1.0 - schedule.rho * cosine) * schedule.initial / denom;
}

double initial_step_size(double f0, std::span<const double> g0, std::size_t parcels,
                         double scale) {
  const double g2 = squared_norm(g0);
  if (g2 == 0.0)
    throw AlreadyOptimal("initial subgradient is zero; the starting point minimizes f");
  return scale * static_cast<double>(parcels) * f0 / g2;
}

}  // namespace saism
