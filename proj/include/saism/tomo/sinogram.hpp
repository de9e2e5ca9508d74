#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "saism/core/random.hpp"
#include "saism/tomo/image.hpp"
#include "saism/tomo/sparse_matrix.hpp"

namespace saism::tomo {

/// Measurements ordered by (view, detector bin), view-major.
struct Sinogram {
  std::size_t views = 0;
  std::size_t bins = 0;
  std::vector<double> values;

  void validate() const;
};

/// Draws from Poisson(mean). Means below 50 use inversion by sequential search;
/// larger means use Hormann's transformed rejection with squeeze (PTRS).
std::uint64_t sample_poisson(double mean, Random& rng);

struct SimulatedSinogram {
  /// Data handed to reconstruction: counts / kappa, or R x_true when noise-free.
  Sinogram data;
  /// Noise-free R x_true in the same units as `data`.
  Sinogram ideal;
  std::optional<double> photon_scale;
  /// |b - b_ideal| / |b_ideal| with b ~ Poisson(kappa R x_true), b_ideal = kappa R x_true.
  double relative_noise = 0.0;
};

/// Noise-free when photon_scale is empty; otherwise b_i ~ Poisson(kappa (R x)_i)
/// with a generator seeded by `seed`, then rescaled by 1 / kappa.
SimulatedSinogram simulate_sinogram(const SparseMatrix& radon, const Image& truth,
                                    std::size_t views, std::size_t bins,
                                    std::optional<double> photon_scale, std::uint64_t seed);

}  // namespace saism::tomo
