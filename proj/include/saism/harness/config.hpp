#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace saism::harness {

/// Everything needed to reproduce one reconstruction run.
struct ExperimentConfig {
  // Geometry.
  std::size_t rows = 64;
  std::size_t cols = 64;
  std::size_t views = 24;
  std::size_t bins = 64;

  std::size_t strings = 1;
  std::uint64_t seed = 1;

  /// Photon scale kappa; empty means noise-free data.
  std::optional<double> photon_scale;
  /// Explicit TV budget; empty means TV of the ground-truth phantom.
  std::optional<double> tau;

  // Step-size schedule.
  double rho = 0.999;
  double alpha = 1.0;
  double decay_exponent = 0.51;
  /// Multiplier in lambda0; empty means the string count P.
  std::optional<std::size_t> parcels;
  double lambda0_scale = 1.0;

  double relaxation = 1.0;
  double sigma = 0.1;

  std::optional<std::size_t> max_iterations = 300;
  std::optional<double> max_seconds;

  std::size_t threads = 1;
  std::size_t record_stride = 1;
  bool measure_time = true;

  /// Measured data file; when set the phantom is not simulated and RSE is not available.
  std::optional<std::filesystem::path> sinogram_file;
  /// Empty disables file output.
  std::filesystem::path output_dir;

  /// 256x256, 24 views, 256 bins.
  static ExperimentConfig simulated_profile();
  /// 64x64, 24 views, 64 bins, lambda0 scale 0.25.
  static ExperimentConfig desk_profile();
  /// Simulated constants with tau = 5e4, relaxation 1.5, lambda0 scale 0.25.
  static ExperimentConfig real_data_profile();

  /// Throws std::invalid_argument on out-of-range or conflicting values.
  void validate() const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// "key = value" lines, doubles printed with 17 significant digits.
std::string to_manifest(const ExperimentConfig& config);
ExperimentConfig parse_manifest(const std::string& text);

void write_manifest(const std::filesystem::path& path, const ExperimentConfig& config);
ExperimentConfig read_manifest(const std::filesystem::path& path);

}  // namespace saism::harness
