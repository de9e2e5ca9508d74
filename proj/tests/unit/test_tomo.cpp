#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "saism/core/random.hpp"
#include "saism/core/vector_ops.hpp"
#include "saism/harness/checks.hpp"
#include "saism/tomo/file_io.hpp"
#include "saism/tomo/l1_residual.hpp"
#include "saism/tomo/phantom.hpp"
#include "saism/tomo/radon.hpp"
#include "saism/tomo/sinogram.hpp"
#include "saism/tomo/tomo_problem.hpp"
#include "saism/tomo/total_variation.hpp"

using namespace saism;
using namespace saism::tomo;
namespace fs = std::filesystem;

namespace {

double sum(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "saism_unit";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("image indexing and pixel centers") {
  Image img(2, 3);
  img(1, 2) = 5;
  CHECK(img.values()[5] == 5);
  CHECK(img.center_x(0) == doctest::Approx(-2.0 / 3.0));
  CHECK(img.center_y(0) == doctest::Approx(0.5));
  CHECK(img.center_y(1) == doctest::Approx(-0.5));
  CHECK_THROWS_AS(Image(2, 2, std::vector<double>(3)), std::invalid_argument);
}

TEST_CASE("sparse matrix validates and multiplies") {
  const SparseMatrix a(2, 3, {0, 2, 3}, {0, 2, 1}, {1, 2, 3});
  CHECK(a.apply(std::vector<double>{1, 1, 1}) == std::vector<double>{3, 3});
  CHECK(a.apply_transpose(std::vector<double>{1, 2}) == std::vector<double>{1, 6, 2});
  CHECK(a.row_squared_norm(0) == 5);
  CHECK(a.row_sum(1) == 3);
  CHECK_THROWS_AS(SparseMatrix(2, 3, {0, 2, 1}, {0, 2, 1}, {1, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(SparseMatrix(1, 3, {0, 2}, {2, 0}, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(SparseMatrix(1, 3, {0, 1}, {3}, {1}), std::invalid_argument);
}

TEST_CASE("radon geometry") {
  const RadonGeometry g{8, 8, 4, 10};
  CHECK(g.measurement_count() == 40);
  CHECK(g.angle(0) == 0.0);
  CHECK(g.angle(2) == doctest::Approx(M_PI / 2));
  CHECK(g.offset(0) == doctest::Approx(-0.9));
  CHECK(g.offset(9) == doctest::Approx(0.9));
}

TEST_CASE("axis-aligned rays carry full chords") {
  const RadonGeometry g{16, 16, 4, 16};
  // theta = 0, t = 0.3: the vertical line x = 0.3 crosses one pixel column.
  const auto ray = trace_ray(g, 0.0, 0.3);
  CHECK(ray.pixels.size() == 16);
  CHECK(sum(ray.lengths) == doctest::Approx(2.0).epsilon(1e-12));
  for (std::size_t p : ray.pixels) CHECK(p % 16 == 10);

  const SparseMatrix R = build_radon({8, 8, 4, 8});
  const std::vector<double> ones(64, 1.0);
  const auto proj = R.apply(ones);
  for (std::size_t d = 0; d < 8; ++d) CHECK(proj[d] == doctest::Approx(2.0));
  // A line through the exact center at theta = 0.
  CHECK(sum(trace_ray({8, 8, 1, 1}, 0.0, 0.0).lengths) == doctest::Approx(2.0));
  CHECK(trace_ray(g, 0.0, 1.5).pixels.empty());
}

TEST_CASE("oblique rays match the chord of the square") {
  const RadonGeometry g{32, 32, 8, 32};
  const double theta = M_PI / 4;
  for (double t : {0.0, 0.3, -0.9}) {
    const auto ray = trace_ray(g, theta, t);
    // Chord of [-1,1]^2 along a diagonal direction at offset t.
    const double chord = 2.0 * std::sqrt(2.0) - 2.0 * std::abs(t);
    CHECK(sum(ray.lengths) == doctest::Approx(chord).epsilon(1e-10));
    for (double l : ray.lengths) CHECK(l > 0.0);
    for (std::size_t i = 1; i < ray.pixels.size(); ++i) CHECK(ray.pixels[i] > ray.pixels[i - 1]);
  }
  const auto ray = trace_ray(g, 0.37, 0.21);
  for (std::size_t p : ray.pixels) CHECK(p < 32 * 32);
}

TEST_CASE("projector is nonnegative and its rows are indexed view-major") {
  const RadonGeometry g{12, 12, 6, 10};
  const SparseMatrix R = build_radon(g);
  CHECK(R.rows() == 60);
  CHECK(R.cols() == 144);
  for (std::size_t i = 0; i < R.rows(); ++i) {
    for (double v : R.row(i).values) CHECK(v >= 0.0);
  }
  const auto r = trace_ray(g, g.angle(3), g.offset(7));
  const auto row = R.row(3 * 10 + 7);
  CHECK(std::vector<std::size_t>(row.cols.begin(), row.cols.end()) == r.pixels);
  CHECK(build_radon(g, 4).apply(std::vector<double>(144, 1.0)) ==
        R.apply(std::vector<double>(144, 1.0)));
}

TEST_CASE("projector adjoint") {
  const auto r = harness::adjoint_check({64, 64, 24, 64}, 100, 3);
  CAPTURE(harness::format_check(r));
  CHECK(r.passed);
}

TEST_CASE("Shepp-Logan phantom") {
  for (std::size_t n : {8, 33, 64, 256}) {
    const Image p = shepp_logan(n, n);
    for (double v : p.values()) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    CHECK(p(0, 0) == 0.0);
    CHECK(p(0, n - 1) == 0.0);
    CHECK(p(n - 1, 0) == 0.0);
    CHECK(p(n - 1, n - 1) == 0.0);
  }
  const Image big = shepp_logan(256, 256);
  CHECK(sum(big.values()) > 0.0);
  CHECK(total_variation(big) > 0.0);
  const Image half = shepp_logan(128, 128);
  // Each 128x128 pixel covers four 256x256 pixels.
  CHECK(sum(half.values()) == doctest::Approx(sum(big.values()) / 4.0).epsilon(0.02));
  CHECK_THROWS_AS(shepp_logan(4, 4), std::invalid_argument);
}

TEST_CASE("Poisson sampler moments") {
  for (double mean : {0.0, 0.7, 5.0, 49.0, 50.0, 400.0, 12345.0}) {
    Random rng(static_cast<std::uint64_t>(mean * 1000) + 1);
    const int n = 20000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
      const double k = static_cast<double>(sample_poisson(mean, rng));
      s += k;
      s2 += k * k;
    }
    const double m = s / n, var = s2 / n - m * m;
    CAPTURE(mean);
    CHECK(std::abs(m - mean) <= 4.0 * std::sqrt(std::max(mean, 1e-12) / n) + 1e-12);
    if (mean > 0) CHECK(var == doctest::Approx(mean).epsilon(0.06));
  }
  Random rng(1);
  CHECK_THROWS_AS(sample_poisson(-1.0, rng), std::invalid_argument);
}

TEST_CASE("sinogram simulation") {
  const RadonGeometry g{32, 32, 8, 32};
  const SparseMatrix R = build_radon(g);
  const Image truth = shepp_logan(32, 32);
  const auto ideal = R.apply(truth.values());

  const auto exact = simulate_sinogram(R, truth, 8, 32, std::nullopt, 1);
  CHECK(exact.data.values == ideal);
  CHECK(exact.relative_noise == 0.0);
  for (double v : exact.data.values) CHECK(v >= 0.0);

  // Mean of b_i over seeds, in count units, within three standard errors.
  const double kappa = 100;
  const std::size_t probe = 4 * 32 + 16;
  double s = 0;
  const int seeds = 200;
  for (int seed = 0; seed < seeds; ++seed)
    s += simulate_sinogram(R, truth, 8, 32, kappa, seed).data.values[probe] * kappa;
  const double expect = kappa * ideal[probe];
  CHECK(std::abs(s / seeds - expect) <= 3.0 * std::sqrt(expect / seeds));

  double prev = 1e300;
  for (double k : {1e2, 4e2, 1e3}) {
    const double noise = simulate_sinogram(R, truth, 8, 32, k, 1).relative_noise;
    CHECK(noise < prev);
    prev = noise;
  }
  Image negative = truth;
  negative(10, 10) = -1;
  CHECK_THROWS_AS(simulate_sinogram(R, negative, 8, 32, std::nullopt, 1), std::invalid_argument);
  CHECK_THROWS_AS(simulate_sinogram(R, truth, 8, 32, -1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(simulate_sinogram(R, truth, 8, 31, std::nullopt, 1), std::invalid_argument);
}

TEST_CASE("total variation examples") {
  CHECK(total_variation(Image(5, 4)) == 0.0);
  CHECK(total_variation_subgradient(Image(5, 4)) == std::vector<double>(20, 0.0));
  Image one(2, 2);
  one(0, 0) = 1;
  CHECK(total_variation(one) == doctest::Approx(2 + std::sqrt(2.0)));
  Image p = shepp_logan(32, 32);
  const double tv = total_variation(p);
  for (double& v : p.values()) v *= 3.5;
  CHECK(total_variation(p) == doctest::Approx(3.5 * tv));
}

TEST_CASE("total variation subgradient agrees with finite differences") {
  const auto fd = harness::tv_gradient_check(50, 2);
  CAPTURE(harness::format_check(fd));
  CHECK(fd.passed);
  const auto ineq = harness::tv_subgradient_inequality_check(1000, 2);
  CAPTURE(harness::format_check(ineq));
  CHECK(ineq.passed);
}

TEST_CASE("TV constraint function") {
  Image one(2, 2);
  one(0, 0) = 1;
  const auto h = total_variation_constraint(2, 2, 1.0, 1.0);
  CHECK(h.value(one.values()) == doctest::Approx(1 + std::sqrt(2.0)));
  CHECK(h.subgradient(one.values()) == total_variation_subgradient(one));
  CHECK_THROWS_AS(total_variation_constraint(2, 2, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("l1 residual components") {
  auto R = std::make_shared<const SparseMatrix>(build_radon({16, 16, 6, 16}));
  const Image truth = shepp_logan(16, 16);
  const auto b = R->apply(truth.values());
  const auto comps = l1_components(R, b);
  CHECK(comps->residual_l1(truth.values()) == 0.0);

  std::vector<double> g(256);
  std::size_t i = 0;
  while (R->row(i).cols.empty()) ++i;
  comps->subgradient(i, truth.values(), g);
  CHECK(g == std::vector<double>(256, 0.0));

  std::vector<double> x(256, 1.0);
  comps->subgradient(i, x, g);
  const double sign = R->row_dot(i, x) > b[i] ? 1.0 : -1.0;
  const auto row = R->row(i);
  for (std::size_t q = 0; q < row.cols.size(); ++q) CHECK(g[row.cols[q]] == sign * row.values[q]);

  // The sparse in-place step equals the dense step.
  std::vector<double> stepped = x;
  comps->step(i, stepped, 0.3);
  for (std::size_t q = 0; q < 256; ++q) CHECK(stepped[q] == x[q] - 0.3 * g[q]);

  Random rng(8);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> u(256), z(256), d(256);
    for (auto& e : u) e = rng.uniform();
    for (auto& e : z) e = rng.uniform();
    const std::size_t k = rng.below(R->rows());
    comps->subgradient(k, u, g);
    for (std::size_t q = 0; q < 256; ++q) d[q] = z[q] - u[q];
    CHECK(comps->value(k, z) >= comps->value(k, u) + dot(g, d) - 1e-12);
  }
  CHECK_THROWS_AS(L1ResidualComponents(R, std::vector<double>(3)), std::invalid_argument);
}

TEST_CASE("initial image") {
  const SparseMatrix R = build_radon({16, 16, 6, 16});
  const auto b = R.apply(std::vector<double>(256, 0.37));
  const Image x0 = initial_image(R, b, 16, 16);
  for (double v : x0.values()) CHECK(v == doctest::Approx(0.37));
  const Image zero = initial_image(R, std::vector<double>(b.size(), 0.0), 16, 16);
  CHECK(zero.values() == std::vector<double>(256, 0.0));

  const Image truth = shepp_logan(16, 16);
  const auto bt = R.apply(truth.values());
  const Image xt = initial_image(R, bt, 16, 16);
  CHECK(sum(R.apply(xt.values())) == doctest::Approx(sum(bt)).epsilon(1e-9));
}

TEST_CASE("tomography problem assembly") {
  const RadonGeometry g{16, 16, 6, 16};
  auto R = std::make_shared<const SparseMatrix>(build_radon(g));
  const Image truth = shepp_logan(16, 16);
  TomoSettings s;
  s.strings = 4;
  s.partition_seed = 3;
  s.tau = total_variation(truth);
  const auto tp = make_tomo_problem(g, R, simulate_sinogram(*R, truth, 6, 16, std::nullopt, 1).data, s);
  CHECK(tp.problem.partition.string_count() == 4);
  CHECK(tp.problem.partition.component_count() == 96);
  CHECK(objective(tp.problem, truth.values()) == doctest::Approx(0.0).epsilon(1e-12));
  // Truth is feasible, so the feasibility operator fixes it.
  CHECK(tp.problem.feasibility.apply(truth.values()) == truth.values());
  std::vector<double> wild(256, -1.0);
  wild[17] = 40;
  for (double v : tp.problem.feasibility.apply(wild)) CHECK(v >= 0.0);
  s.strings = 0;
  CHECK_THROWS(make_tomo_problem(g, R, tp.data, s));
}

TEST_CASE("sinogram file round trip") {
  Sinogram s{3, 2, {1.5, -0.0, 1e-300, 7, 8, 9}};
  const auto path = scratch("roundtrip.sino");
  write_sinogram(path, s);
  const Sinogram t = read_sinogram(path);
  CHECK(t.views == 3);
  CHECK(t.bins == 2);
  CHECK(t.values == s.values);
  CHECK(std::signbit(t.values[1]));
  {
    std::ofstream out(path, std::ios::binary | std::ios::app);
    out << 'x';
  }
  CHECK_THROWS_AS(read_sinogram(path), std::runtime_error);
  CHECK_THROWS_AS(read_sinogram(scratch("missing.sino")), std::runtime_error);
}

TEST_CASE("PGM round trip within quantization") {
  const Image p = shepp_logan(40, 30);
  const auto path = scratch("phantom.pgm");
  write_pgm(path, p);
  CHECK(fs::exists(range_sidecar(path)));
  const Image q = read_pgm(path);
  REQUIRE(q.rows() == 40);
  REQUIRE(q.cols() == 30);
  for (std::size_t k = 0; k < p.size(); ++k) CHECK(std::abs(q.values()[k] - p.values()[k]) <= 1.0 / 65535);
  std::ifstream in(path, std::ios::binary);
  std::string magic;
  in >> magic;
  CHECK(magic == "P5");
}
