#include "saism/harness/experiment.hpp"

#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "saism/harness/metrics.hpp"
#include "saism/tomo/file_io.hpp"
#include "saism/tomo/phantom.hpp"
#include "saism/tomo/radon.hpp"
#include "saism/tomo/tomo_problem.hpp"
#include "saism/tomo/total_variation.hpp"

namespace saism::harness {

namespace {

tomo::RadonGeometry geometry_of(const ExperimentConfig& c) {
  return {c.rows, c.cols, c.views, c.bins};
}

void append_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

ExperimentData prepare_data(const ExperimentConfig& config, const tomo::SparseMatrix* radon) {
  ExperimentData data;
  if (config.sinogram_file) {
    data.sinogram = tomo::read_sinogram(*config.sinogram_file);
    if (data.sinogram.views != config.views || data.sinogram.bins != config.bins)
      throw std::invalid_argument(config.sinogram_file->string() +
                                  ": sinogram shape does not match --views/--bins");
    return data;
  }
  std::optional<tomo::SparseMatrix> own;
  if (!radon) radon = &own.emplace(tomo::build_radon(geometry_of(config), config.threads));
  tomo::Image truth = tomo::shepp_logan(config.rows, config.cols);
  auto sim = tomo::simulate_sinogram(*radon, truth, config.views, config.bins,
                                     config.photon_scale, config.seed);
  data.sinogram = std::move(sim.data);
  if (config.photon_scale) data.relative_noise = sim.relative_noise;
  data.truth = std::move(truth);
  return data;
}

}  // namespace

ExperimentData prepare_data(const ExperimentConfig& config) {
  config.validate();
  return prepare_data(config, nullptr);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto geometry = geometry_of(config);
  auto radon = std::make_shared<const tomo::SparseMatrix>(
      tomo::build_radon(geometry, config.threads));
  ExperimentData data = prepare_data(config, radon.get());
  if (!config.tau && !data.truth)
    throw std::invalid_argument("a TV budget is required for measured data");

  ExperimentResult result;
  result.truth = data.truth;
  result.relative_noise = data.relative_noise;
  result.tau = config.tau ? *config.tau : tomo::total_variation(*data.truth);

  tomo::TomoSettings settings;
  settings.strings = config.strings;
  settings.partition_seed = config.seed;
  settings.tau = result.tau;
  settings.relaxation = config.relaxation;
  settings.sigma = config.sigma;
  const tomo::TomoProblem tp = tomo::make_tomo_problem(geometry, radon, data.sinogram, settings);

  tomo::Image x0 = tomo::initial_image(*radon, tp.data.values, config.rows, config.cols);
  result.parcels = config.parcels.value_or(config.strings);

  StepSizeSchedule schedule;
  schedule.rho = config.rho;
  schedule.alpha = config.alpha;
  schedule.decay_exponent = config.decay_exponent;
  schedule.strings = config.strings;
  schedule.parcels = result.parcels;

  try {
    const double f0 = objective(tp.problem, x0.span());
    const std::vector<double> g0 = objective_subgradient(tp.problem, x0.span());
    result.lambda0 = initial_step_size(f0, g0, result.parcels, config.lambda0_scale);
  } catch (const AlreadyOptimal&) {
    result.started_optimal = true;
  }

  if (result.started_optimal || !(result.lambda0 > 0.0)) {
    result.started_optimal = true;
    result.reconstruction = std::move(x0);
  } else {
    schedule.initial = result.lambda0;
    RunOptions options;
    options.solver.threads = config.threads;
    options.record_stride = config.record_stride;
    options.measure_time = config.measure_time;

    const std::optional<tomo::Image>& truth = result.truth;
    const std::size_t rows = config.rows, cols = config.cols;
    Observer observer = [&truth, rows, cols](const SolverState& s, RunRecord& rec) {
      const tomo::Image x(rows, cols, s.x);
      rec.tv = tomo::total_variation(x);
      if (truth) rec.rse = relative_squared_error(s.x, truth->span());
    };
    RunResult run_result = run(x0.values(), tp.problem, schedule,
                               Budget{config.max_iterations, config.max_seconds}, options,
                               observer);
    result.records = std::move(run_result.records);
    result.stalled_feasibility_steps = run_result.state.feasibility.stalled_steps;
    result.reconstruction = tomo::Image(rows, cols, std::move(run_result.state.x));
  }

  if (!config.output_dir.empty()) {
    std::filesystem::create_directories(config.output_dir);
    write_metrics_csv(config.output_dir / "metrics.csv", result.records);
    write_manifest(config.output_dir / "manifest.txt", config);
    tomo::write_pgm(config.output_dir / "reconstruction.pgm", result.reconstruction);
    if (result.truth) tomo::write_pgm(config.output_dir / "phantom.pgm", *result.truth);
  }
  return result;
}

std::vector<ExperimentResult> run_sweep(const ExperimentConfig& base,
                                        std::span<const std::size_t> string_counts) {
  std::vector<ExperimentResult> out;
  for (std::size_t p : string_counts) {
    ExperimentConfig c = base;
    c.strings = p;
    if (!base.output_dir.empty()) c.output_dir = base.output_dir / ("strings_" + std::to_string(p));
    out.push_back(run_experiment(c));
  }
  return out;
}

std::string metrics_csv(std::span<const RunRecord> records) {
  std::string out = "k,elapsed_s,f,tv,rse,lambda,cosine\n";
  for (const auto& r : records) {
    out += std::to_string(r.k);
    out += ',';
    append_double(out, r.elapsed_s);
    out += ',';
    append_double(out, r.f);
    out += ',';
    if (r.tv) append_double(out, *r.tv);
    out += ',';
    if (r.rse) append_double(out, *r.rse);
    out += ',';
    append_double(out, r.lambda);
    out += ',';
    append_double(out, r.cosine);
    out += '\n';
  }
  return out;
}

void write_metrics_csv(const std::filesystem::path& path, std::span<const RunRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << metrics_csv(records);
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace saism::harness
