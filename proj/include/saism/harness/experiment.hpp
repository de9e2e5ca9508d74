#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "saism/core/solver.hpp"
#include "saism/harness/config.hpp"
#include "saism/tomo/image.hpp"
#include "saism/tomo/sinogram.hpp"

namespace saism::harness {

struct ExperimentData {
  std::optional<tomo::Image> truth;
  tomo::Sinogram sinogram;
  std::optional<double> relative_noise;
};

/// Phantom plus simulated sinogram, or the measured sinogram named by the config.
ExperimentData prepare_data(const ExperimentConfig& config);

struct ExperimentResult {
  std::vector<RunRecord> records;
  tomo::Image reconstruction;
  std::optional<tomo::Image> truth;
  std::optional<double> relative_noise;
  double tau = 0.0;
  double lambda0 = 0.0;
  std::size_t parcels = 0;
  std::size_t stalled_feasibility_steps = 0;
  /// True when the initial subgradient vanished and no iteration was run.
  bool started_optimal = false;
};

/// Builds the reconstruction problem, runs the solver under the configured
/// budget and, when output_dir is set, writes metrics.csv, manifest.txt,
/// reconstruction.pgm and (for simulated data) phantom.pgm.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// One run per string count, each writing into output_dir / "strings_<P>".
std::vector<ExperimentResult> run_sweep(const ExperimentConfig& base,
                                        std::span<const std::size_t> string_counts);

/// Header k,elapsed_s,f,tv,rse,lambda,cosine; empty fields for absent metrics.
std::string metrics_csv(std::span<const RunRecord> records);
void write_metrics_csv(const std::filesystem::path& path, std::span<const RunRecord> records);

}  // namespace saism::harness
