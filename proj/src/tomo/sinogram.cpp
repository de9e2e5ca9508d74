#include "saism/tomo/sinogram.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "saism/core/vector_ops.hpp"

namespace saism::tomo {

void Sinogram::validate() const {
  if (values.size() != views * bins)
    throw std::invalid_argument("sinogram " + std::to_string(views) + "x" +
                                std::to_string(bins) + " holds " +
                                std::to_string(values.size()) + " values");
}

namespace {

std::uint64_t poisson_inversion(double mean, Random& rng) {
  const double u = rng.uniform();
  double p = std::exp(-mean);
  double cdf = p;
  std::uint64_t k = 0;
  // The cap only matters when rounding leaves the cdf short of u in the far tail.
  while (u > cdf && k < 1000) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

// W. Hormann, "The transformed rejection method for generating Poisson random
// variables", Insurance: Mathematics and Economics 12 (1993).
std::uint64_t poisson_ptrs(double mean, Random& rng) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0))
      return static_cast<std::uint64_t>(k);
  }
}

}  // namespace

std::uint64_t sample_poisson(double mean, Random& rng) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw std::invalid_argument("Poisson mean must be finite and nonnegative");
  if (mean == 0.0) return 0;
  return mean < 50.0 ? poisson_inversion(mean, rng) : poisson_ptrs(mean, rng);
}

SimulatedSinogram simulate_sinogram(const SparseMatrix& radon, const Image& truth,
                                    std::size_t views, std::size_t bins,
                                    std::optional<double> photon_scale,
                                    std::uint64_t seed) {
  if (radon.rows() != views * bins)
    throw std::invalid_argument("projector rows do not match views x bins");
  for (double v : truth.values())
    if (v < 0.0) throw std::invalid_argument("ground-truth image has negative pixels");
  if (photon_scale && !(*photon_scale > 0.0 && std::isfinite(*photon_scale)))
    throw std::invalid_argument("photon scale must be positive and finite");

  std::vector<double> ideal = radon.apply(truth.span());
  for (double v : ideal)
    if (v < 0.0) throw std::logic_error("projection of a nonnegative image is negative");

  SimulatedSinogram out;
  out.ideal = {views, bins, ideal};
  out.photon_scale = photon_scale;
  if (!photon_scale) {
    out.data = {views, bins, std::move(ideal)};
    return out;
  }

  const double kappa = *photon_scale;
  Random rng(seed);
  std::vector<double> data(ideal.size());
  double err2 = 0.0, ref2 = 0.0;
  for (std::size_t i = 0; i < ideal.size(); ++i) {
    const double mean = kappa * ideal[i];
    const double count = static_cast<double>(sample_poisson(mean, rng));
    err2 += (count - mean) * (count - mean);
    ref2 += mean * mean;
    data[i] = count / kappa;
  }
  out.data = {views, bins, std::move(data)};
  out.relative_noise = ref2 > 0.0 ? std::sqrt(err2 / ref2) : 0.0;
  return out;
}

}  // namespace saism::tomo
