#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "saism/harness/checks.hpp"
#include "saism/harness/config.hpp"
#include "saism/harness/experiment.hpp"
#include "saism/harness/metrics.hpp"
#include "saism/tomo/file_io.hpp"
#include "saism/tomo/phantom.hpp"

using namespace saism;
using namespace saism::harness;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "saism_unit" / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig small_config() {
  ExperimentConfig c = ExperimentConfig::desk_profile();
  c.rows = c.cols = 16;
  c.views = 8;
  c.bins = 16;
  c.max_iterations = 20;
  c.measure_time = false;
  return c;
}

}  // namespace

TEST_CASE("relative squared error") {
  const std::vector<double> t{1, 2, 0, -2};
  CHECK(relative_squared_error(t, t) == 0.0);
  CHECK(relative_squared_error(std::vector<double>(4, 0.0), t) == 1.0);
  CHECK(relative_squared_error(std::vector<double>{2, 4, 0, -4}, t) == 1.0);
  CHECK_THROWS_AS(relative_squared_error(t, std::vector<double>(4, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(relative_squared_error(t, std::vector<double>(3, 1.0)), std::invalid_argument);
}

TEST_CASE("profile line") {
  CHECK(profile_line(tomo::Image(5, 3, 0.25), 1) == std::vector<double>(5, 0.25));
  const auto p = tomo::shepp_logan(64, 64);
  const auto line = profile_line(p, 32);
  REQUIRE(line.size() == 64);
  bool varies = false;
  for (double v : line) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    varies = varies || v != line[0];
  }
  CHECK(varies);
  CHECK_THROWS_AS(profile_line(p, 64), std::out_of_range);
}

TEST_CASE("threshold query and best-so-far") {
  std::vector<RunRecord> recs(4);
  const double fs_[] = {5, 3, 4, 1};
  for (std::size_t i = 0; i < 4; ++i) {
    recs[i].k = i + 1;
    recs[i].f = fs_[i];
  }
  CHECK(first_below(recs, 3.5)->k == 2);
  CHECK(first_below(recs, 3.0)->k == 2);
  CHECK(!first_below(recs, 0.5));
  CHECK(best_so_far(recs) == std::vector<double>{5, 3, 3, 1});
}

TEST_CASE("profiles carry the documented constants") {
  const auto d = ExperimentConfig::desk_profile();
  CHECK(d.rows == 64);
  CHECK(d.views == 24);
  CHECK(d.bins == 64);
  CHECK(d.rho == 0.999);
  CHECK(d.decay_exponent == 0.51);
  CHECK(d.alpha == 1.0);
  CHECK(d.relaxation == 1.0);
  const auto s = ExperimentConfig::simulated_profile();
  CHECK(s.rows == 256);
  CHECK(s.bins == 256);
  CHECK(s.lambda0_scale == 1.0);
  const auto r = ExperimentConfig::real_data_profile();
  CHECK(r.tau == 5e4);
  CHECK(r.relaxation == 1.5);
  CHECK(r.lambda0_scale == 0.25);
  CHECK_NOTHROW(d.validate());
  CHECK_NOTHROW(s.validate());
  CHECK_NOTHROW(r.validate());
}

TEST_CASE("config validation") {
  auto c = small_config();
  c.photon_scale = 100;
  c.sinogram_file = "x.sino";
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = small_config();
  c.rho = 1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = small_config();
  c.relaxation = 1.95;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = small_config();
  c.max_iterations.reset();
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = small_config();
  c.strings = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("manifest round trip") {
  ExperimentConfig c = ExperimentConfig::real_data_profile();
  c.photon_scale = 400;
  c.tau = 1.0 / 3.0;
  c.seed = 0xfeedfacecafebeefULL;
  c.max_seconds = 2.5;
  c.parcels = 17;
  c.output_dir = "some dir/with space";
  CHECK(parse_manifest(to_manifest(c)) == c);

  ExperimentConfig m = small_config();
  m.sinogram_file = "data/measured.sino";
  m.tau = 12;
  const auto path = fresh_dir("manifest") / "manifest.txt";
  fs::create_directories(path.parent_path());
  write_manifest(path, m);
  CHECK(read_manifest(path) == m);

  CHECK_THROWS_AS(parse_manifest("bogus = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_manifest("rows = seven\n"), std::invalid_argument);
}

TEST_CASE("metrics CSV layout") {
  RunRecord a;
  a.k = 1;
  a.f = 2.5;
  a.tv = 1;
  a.lambda = 0.1;
  RunRecord b = a;
  b.k = 2;
  b.tv.reset();
  b.rse = 0.5;
  const std::vector<RunRecord> recs{a, b};
  CHECK(metrics_csv(recs) ==
        "k,elapsed_s,f,tv,rse,lambda,cosine\n"
        "1,0,2.5,1,,0.10000000000000001,0\n"
        "2,0,2.5,,0.5,0.10000000000000001,0\n");
}

TEST_CASE("experiment writes its artifacts") {
  ExperimentConfig c = small_config();
  c.output_dir = fresh_dir("experiment");
  const auto r = run_experiment(c);
  CHECK(r.records.size() == 20);
  CHECK(r.parcels == 1);
  CHECK(r.lambda0 > 0.0);
  for (const auto& rec : r.records) {
    CHECK(std::isfinite(rec.f));
    CHECK(rec.f >= 0.0);
    CHECK(rec.rse.value() >= 0.0);
    CHECK(rec.tv.value() >= 0.0);
    CHECK(rec.lambda > 0.0);
  }
  for (double v : r.reconstruction.values()) CHECK(v >= 0.0);
  CHECK(fs::exists(c.output_dir / "metrics.csv"));
  CHECK(fs::exists(c.output_dir / "reconstruction.pgm"));
  CHECK(fs::exists(c.output_dir / "phantom.pgm"));
  CHECK(read_manifest(c.output_dir / "manifest.txt") == c);

  // The manifest alone reproduces the run.
  ExperimentConfig again = read_manifest(c.output_dir / "manifest.txt");
  again.output_dir = fresh_dir("experiment_again");
  run_experiment(again);
  CHECK(slurp(c.output_dir / "metrics.csv") == slurp(again.output_dir / "metrics.csv"));
}

TEST_CASE("experiment from a sinogram file has no RSE") {
  ExperimentConfig sim = small_config();
  sim.photon_scale = 1000;
  const auto data = prepare_data(sim);
  const fs::path dir = fresh_dir("measured");
  fs::create_directories(dir);
  tomo::write_sinogram(dir / "data.sino", data.sinogram);

  ExperimentConfig c = small_config();
  c.sinogram_file = dir / "data.sino";
  c.tau = 20;
  c.output_dir = dir / "out";
  const auto r = run_experiment(c);
  CHECK(!r.truth);
  for (const auto& rec : r.records) CHECK(!rec.rse);
  const std::string csv = slurp(c.output_dir / "metrics.csv");
  CHECK(csv.find(",,") != std::string::npos);
  CHECK(!fs::exists(c.output_dir / "phantom.pgm"));

  c.bins = 15;
  CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);
}

TEST_CASE("sweep emits one CSV per string count") {
  ExperimentConfig c = small_config();
  c.output_dir = fresh_dir("sweep");
  const std::vector<std::size_t> ps{1, 2, 3, 4, 5, 6};
  const auto results = run_sweep(c, ps);
  REQUIRE(results.size() == 6);
  for (std::size_t p : ps) {
    CHECK(fs::exists(c.output_dir / ("strings_" + std::to_string(p)) / "metrics.csv"));
    CHECK(results[p - 1].records.size() == results[0].records.size());
    CHECK(results[p - 1].parcels == p);
  }
}

TEST_CASE("thread count does not change the output") {
  ExperimentConfig c = small_config();
  c.strings = 4;
  const auto one = run_experiment(c);
  c.threads = 4;
  const auto four = run_experiment(c);
  CHECK(metrics_csv(one.records) == metrics_csv(four.records));
  CHECK(one.reconstruction.values() == four.reconstruction.values());
}

TEST_CASE("noisy data is reconstructed in phantom units") {
  ExperimentConfig c = small_config();
  c.photon_scale = 1000;
  const auto r = run_experiment(c);
  REQUIRE(r.relative_noise);
  CHECK(*r.relative_noise > 0.0);
  CHECK(r.records.back().rse.value() < 1.0);
}

TEST_CASE("descent and displacement suites") {
  const auto d = descent_inequality_check(100, 20, 5);
  CAPTURE(format_check(d));
  CHECK(d.passed);
  const auto c = operator_displacement_check(100, 20, 5);
  CAPTURE(format_check(c));
  CHECK(c.passed);
  CHECK(planar_trajectory_check().passed);
}

TEST_CASE("shipped profiles produce finite series") {
  for (auto c : {ExperimentConfig::desk_profile(), ExperimentConfig::simulated_profile(),
                 ExperimentConfig::real_data_profile()}) {
    c.max_iterations = 5;
    c.strings = 3;
    c.photon_scale = 400;
    const auto r = run_experiment(c);
    REQUIRE(r.records.size() == 5);
    for (const auto& rec : r.records) {
      CHECK(std::isfinite(rec.f));
      CHECK(std::isfinite(rec.tv.value()));
      CHECK(std::isfinite(rec.rse.value()));
      CHECK(std::isfinite(rec.lambda));
    }
  }
}
