// saism: reconstruction experiments and invariant checks from the command line.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "saism/core/vector_ops.hpp"
#include "saism/feasibility/constraints.hpp"
#include "saism/harness/checks.hpp"
#include "saism/harness/config.hpp"
#include "saism/harness/experiment.hpp"
#include "saism/tomo/file_io.hpp"
#include "saism/tomo/phantom.hpp"

namespace fs = std::filesystem;
using saism::harness::ExperimentConfig;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

fs::path default_output_dir() {
  if (const char* env = std::getenv("SAISM_OUTPUT_DIR"); env && *env) return env;
  return "saism_out";
}

/// Flags shared by simulate and reconstruct. Each value is applied only when
/// its option was given, so a loaded manifest or profile stays in charge otherwise.
struct ConfigFlags {
  std::string profile = "desk";
  std::string manifest;
  std::size_t size = 0, views = 0, bins = 0, strings = 0, iters = 0, threads = 0, stride = 0,
              mu = 0;
  std::uint64_t seed = 0;
  double seconds = 0, kappa = 0, tau = 0, nu = 0, rho = 0, alpha = 0, s = 0, scale = 0,
         sigma = 0;
  bool noise_free = false, no_time = false;
  std::string sinogram, out;

  std::vector<CLI::Option*> options;
  CLI::Option *o_size{}, *o_views{}, *o_bins{}, *o_strings{}, *o_iters{}, *o_threads{},
      *o_stride{}, *o_mu{}, *o_seed{}, *o_seconds{}, *o_kappa{}, *o_tau{}, *o_nu{}, *o_rho{},
      *o_alpha{}, *o_s{}, *o_scale{}, *o_sigma{}, *o_sinogram{}, *o_out{}, *o_manifest{};

  void attach(CLI::App& app, bool reconstruct) {
    app.add_option("--profile", profile, "Base constants: desk, simulated or real")
        ->check(CLI::IsMember({"desk", "simulated", "real"}));
    o_manifest = app.add_option("--config", manifest, "Start from a run manifest")
                     ->check(CLI::ExistingFile);
    o_size = app.add_option("--size", size, "Image is size x size pixels");
    o_views = app.add_option("--views", views, "Number of view angles");
    o_bins = app.add_option("--bins", bins, "Detector bins per view");
    o_seed = app.add_option("--seed", seed, "Seed for noise and string partition");
    o_kappa = app.add_option("--kappa", kappa, "Photon scale for Poisson noise");
    auto* nf = app.add_flag("--noise-free", noise_free, "Use exact projections");
    nf->excludes(o_kappa);
    o_out = app.add_option("--out", out, "Output directory (default $SAISM_OUTPUT_DIR)");
    o_threads = app.add_option("--threads", threads, "Thread cap (default: cores, at most P)");
    if (!reconstruct) return;
    o_strings = app.add_option("--strings", strings, "Number of strings P");
    o_iters = app.add_option("--iters", iters, "Iteration budget");
    o_seconds = app.add_option("--seconds", seconds, "Wall-clock budget");
    o_tau = app.add_option("--tau", tau, "TV budget (default: TV of the phantom)");
    o_nu = app.add_option("--nu", nu, "Relaxation of the TV projection");
    o_rho = app.add_option("--rho", rho, "Step-size damping rho");
    o_alpha = app.add_option("--alpha", alpha, "Step-size decay alpha");
    o_s = app.add_option("--s", s, "Step-size decay exponent");
    o_mu = app.add_option("--mu", mu, "Multiplier in the initial step (default: P)");
    o_scale = app.add_option("--lambda0-scale", scale, "Extra factor on the initial step");
    o_sigma = app.add_option("--sigma", sigma, "Lower bound on relaxations");
    o_stride = app.add_option("--stride", stride, "Record every n-th iteration");
    o_sinogram = app.add_option("--sinogram", sinogram, "Reconstruct from a sinogram file")
                     ->check(CLI::ExistingFile);
    app.add_flag("--no-time", no_time, "Record elapsed_s as 0 (bitwise reproducible CSV)");
    o_sinogram->excludes(o_kappa)->excludes(nf);
  }

  static bool given(const CLI::Option* o) { return o && o->count() > 0; }

  ExperimentConfig resolve() const {
    ExperimentConfig c = profile == "simulated" ? ExperimentConfig::simulated_profile()
                         : profile == "real"    ? ExperimentConfig::real_data_profile()
                                                : ExperimentConfig::desk_profile();
    if (given(o_manifest)) c = saism::harness::read_manifest(manifest);
    if (given(o_size)) c.rows = c.cols = size;
    if (given(o_views)) c.views = views;
    if (given(o_bins)) c.bins = bins;
    if (given(o_seed)) c.seed = seed;
    if (given(o_kappa)) c.photon_scale = kappa;
    if (noise_free) c.photon_scale.reset();
    if (given(o_strings)) c.strings = strings;
    if (given(o_iters)) c.max_iterations = iters;
    if (given(o_seconds)) {
      c.max_seconds = seconds;
      if (!given(o_iters)) c.max_iterations.reset();
    }
    if (given(o_tau)) c.tau = tau;
    if (given(o_nu)) c.relaxation = nu;
    if (given(o_rho)) c.rho = rho;
    if (given(o_alpha)) c.alpha = alpha;
    if (given(o_s)) c.decay_exponent = s;
    if (given(o_mu)) c.parcels = mu;
    if (given(o_scale)) c.lambda0_scale = scale;
    if (given(o_sigma)) c.sigma = sigma;
    if (given(o_stride)) c.record_stride = stride;
    if (given(o_sinogram)) {
      c.sinogram_file = sinogram;
      c.photon_scale.reset();
    }
    if (no_time) c.measure_time = false;
    c.output_dir = given(o_out) ? fs::path(out)
                   : c.output_dir.empty() ? default_output_dir()
                                          : c.output_dir;
    if (given(o_threads)) {
      c.threads = threads;
    } else if (!given(o_manifest)) {
      const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
      c.threads = std::min(hw, c.strings);
    }
    try {
      c.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return c;
  }
};

void print_run(const ExperimentConfig& c, const saism::harness::ExperimentResult& r) {
  std::printf("strings=%zu lambda0=%.6g tau=%.6g", c.strings, r.lambda0, r.tau);
  if (r.relative_noise) std::printf(" noise=%.4f", *r.relative_noise);
  if (r.started_optimal) {
    std::printf(" initial image is optimal, no iterations run\n");
    return;
  }
  const auto& last = r.records.back();
  double best = last.f;
  for (const auto& rec : r.records) best = std::min(best, rec.f);
  std::printf(" k=%zu f=%.6g best_f=%.6g tv=%.6g", last.k, last.f, best, last.tv.value_or(0));
  if (last.rse) std::printf(" rse=%.6g", *last.rse);
  std::printf(" -> %s\n", c.output_dir.string().c_str());
}

int cmd_simulate(const ConfigFlags& flags) {
  const ExperimentConfig c = flags.resolve();
  const auto data = saism::harness::prepare_data(c);
  fs::create_directories(c.output_dir);
  saism::tomo::write_pgm(c.output_dir / "phantom.pgm", *data.truth);
  saism::tomo::write_sinogram(c.output_dir / "sinogram.sino", data.sinogram);
  saism::harness::write_manifest(c.output_dir / "manifest.txt", c);
  std::printf("%zux%zu phantom, %zu views x %zu bins", c.rows, c.cols, c.views, c.bins);
  if (data.relative_noise) std::printf(", relative noise %.4f", *data.relative_noise);
  std::printf(" -> %s\n", c.output_dir.string().c_str());
  return 0;
}

int cmd_reconstruct(const ConfigFlags& flags, const std::vector<std::size_t>& sweep) {
  const ExperimentConfig c = flags.resolve();
  if (sweep.empty()) {
    print_run(c, saism::harness::run_experiment(c));
    return 0;
  }
  for (std::size_t p : sweep) {
    if (p < 1 || p > c.views * c.bins) throw UsageError("sweep string counts out of range");
  }
  const auto results = saism::harness::run_sweep(c, sweep);
  for (std::size_t q = 0; q < sweep.size(); ++q) {
    ExperimentConfig cq = c;
    cq.strings = sweep[q];
    cq.output_dir = c.output_dir / ("strings_" + std::to_string(sweep[q]));
    print_run(cq, results[q]);
  }
  return 0;
}

int cmd_figure1() {
  const auto points = saism::planar_example::trajectory(10);
  const auto hs = saism::planar_example::constraints();
  std::printf("%-3s %22s %22s %12s %12s\n", "t", "x", "y", "norm", "max_h");
  for (std::size_t t = 0; t < points.size(); ++t) {
    double mh = hs[0].value(points[t]);
    for (const auto& h : hs) mh = std::max(mh, h.value(points[t]));
    std::printf("%-3zu %22.16g %22.16g %12.6g %12.6g\n", t, points[t][0], points[t][1],
                saism::norm(points[t]), mh);
  }
  return 0;
}

int cmd_phantom(std::size_t size, const std::string& out) {
  const fs::path path = out.empty() ? default_output_dir() / "phantom.pgm" : fs::path(out);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  saism::tomo::write_pgm(path, saism::tomo::shepp_logan(size, size));
  std::printf("%zux%zu phantom -> %s\n", size, size, path.string().c_str());
  return 0;
}

int cmd_check(std::uint64_t seed) {
  bool ok = true;
  for (const auto& r : saism::harness::run_all_checks(seed)) {
    std::printf("%s\n", saism::harness::format_check(r).c_str());
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"String-averaging incremental subgradient reconstruction"};
  app.require_subcommand(1);

  ConfigFlags sim_flags, rec_flags;
  auto* simulate = app.add_subcommand("simulate", "Write a phantom and its sinogram");
  sim_flags.attach(*simulate, false);

  auto* reconstruct = app.add_subcommand("reconstruct", "Run a reconstruction");
  rec_flags.attach(*reconstruct, true);
  std::vector<std::size_t> sweep;
  reconstruct->add_option("--sweep", sweep, "Run once per listed string count")
      ->delimiter(',');

  auto* figure1 = app.add_subcommand("figure1", "Print the planar feasibility trajectory");

  std::size_t phantom_size = 256;
  std::string phantom_out;
  auto* phantom = app.add_subcommand("phantom", "Write the Shepp-Logan phantom as PGM");
  phantom->add_option("--size", phantom_size, "Image is size x size pixels")
      ->check(CLI::Range(std::size_t{8}, std::size_t{1} << 14));
  phantom->add_option("--out", phantom_out, "Output PGM path");

  std::uint64_t check_seed = 1;
  auto* check = app.add_subcommand("check", "Run the invariant suites");
  check->add_option("--seed", check_seed, "Seed for the random cases");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*simulate) return cmd_simulate(sim_flags);
    if (*reconstruct) return cmd_reconstruct(rec_flags, sweep);
    if (*figure1) return cmd_figure1();
    if (*phantom) return cmd_phantom(phantom_size, phantom_out);
    if (*check) return cmd_check(check_seed);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "saism: %s\n", e.what());
    std::fprintf(stderr, "%s", app.help().c_str());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "saism: %s\n", e.what());
    return 1;
  }
  return 0;
}
