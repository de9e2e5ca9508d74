#include "saism/harness/checks.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>

#include "saism/core/components.hpp"
#include "saism/core/partition.hpp"
#include "saism/core/random.hpp"
#include "saism/core/solver.hpp"
#include "saism/core/step_size.hpp"
#include "saism/core/vector_ops.hpp"
#include "saism/feasibility/constraints.hpp"
#include "saism/feasibility/feasibility.hpp"
#include "saism/tomo/image.hpp"
#include "saism/tomo/total_variation.hpp"

namespace saism::harness {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double symmetric(Random& rng, double half_width) {
  return half_width * (2.0 * rng.uniform() - 1.0);
}

double between(Random& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

std::vector<double> random_vector(Random& rng, std::size_t n, double half_width) {
  std::vector<double> v(n);
  for (double& e : v) e = symmetric(rng, half_width);
  return v;
}

/// Tracks min slack over cases against an absolute floor.
struct SlackTracker {
  double worst = std::numeric_limits<double>::infinity();
  std::size_t cases = 0;
  void add(double slack) {
    worst = std::min(worst, slack);
    ++cases;
  }
};

CheckResult finish_slack(std::string name, const SlackTracker& t, double floor,
                         Clock::time_point start) {
  CheckResult r;
  r.name = std::move(name);
  r.cases = t.cases;
  r.worst = t.worst;
  r.tolerance = floor;
  r.passed = t.cases > 0 && t.worst >= floor;
  r.seconds = seconds_since(start);
  return r;
}

double fejer_slack(std::span<const double> x, std::span<const double> image,
                   std::span<const double> y) {
  return squared_distance(x, y) - squared_distance(image, y);
}

constexpr double kFejerFloor = -1e-10;
constexpr double kDescentFloor = -1e-9;

CheckResult fejer_halfspace(std::size_t cases, Random& rng) {
  const auto start = Clock::now();
  SlackTracker t;
  while (t.cases < cases) {
    const std::size_t n = 2 + rng.below(5);
    std::vector<double> a = random_vector(rng, n, 1.0);
    if (squared_norm(a) < 1e-6) continue;
    const double b = symmetric(rng, 2.0);
    const auto h = halfspace(a, b, between(rng, 0.05, 1.95));
    std::vector<double> y = random_vector(rng, n, 3.0);
    const double hy = h.value(y);
    if (hy > 0.0) {
      const double shift = (hy + rng.uniform()) / squared_norm(a);
      for (std::size_t j = 0; j < n; ++j) y[j] -= shift * a[j];
    }
    if (h.value(y) > 0.0) continue;
    const std::vector<double> x = random_vector(rng, n, 5.0);
    if (h.value(x) <= 0.0) continue;
    t.add(fejer_slack(x, subgradient_projection_step(x, h), y));
  }
  return finish_slack("fejer.halfspace", t, kFejerFloor, start);
}

/// Ball constraints: y = center + u scaled into the ball by the matching norm.
template <class MakeBall, class Norm>
CheckResult fejer_ball(std::string name, std::size_t cases, Random& rng, MakeBall make,
                       Norm norm_of) {
  const auto start = Clock::now();
  SlackTracker t;
  while (t.cases < cases) {
    const std::size_t n = 2 + rng.below(5);
    std::vector<double> center = random_vector(rng, n, 2.0);
    const double radius = between(rng, 0.2, 3.0);
    const auto h = make(center, radius, between(rng, 0.05, 1.95));
    std::vector<double> u = random_vector(rng, n, 1.0);
    const double un = norm_of(u);
    if (un == 0.0) continue;
    const double scale = radius * rng.uniform() / un;
    std::vector<double> y(n);
    for (std::size_t j = 0; j < n; ++j) y[j] = center[j] + scale * u[j];
    if (h.value(y) > 0.0) continue;
    std::vector<double> x = random_vector(rng, n, 4.0);
    for (std::size_t j = 0; j < n; ++j) x[j] += center[j];
    if (h.value(x) <= 0.0) continue;
    t.add(fejer_slack(x, subgradient_projection_step(x, h), y));
  }
  return finish_slack(std::move(name), t, kFejerFloor, start);
}

double l1_norm(std::span<const double> v) {
  double s = 0.0;
  for (double e : v) s += std::abs(e);
  return s;
}

double linf_norm(std::span<const double> v) {
  double s = 0.0;
  for (double e : v) s = std::max(s, std::abs(e));
  return s;
}

/// A point feasible for every planar constraint, by rejection from a box
/// around the origin.
std::vector<double> feasible_planar_point(const std::vector<ConstraintFunction>& hs,
                                          Random& rng) {
  for (;;) {
    std::vector<double> y = random_vector(rng, 2, 1.0);
    bool ok = true;
    for (const auto& h : hs) ok = ok && h.value(y) <= 0.0;
    if (ok) return y;
  }
}

CheckResult fejer_planar_h3(std::size_t cases, Random& rng) {
  const auto start = Clock::now();
  SlackTracker t;
  while (t.cases < cases) {
    const double nu = between(rng, 0.05, 1.95);
    const auto h = planar_example::constraints({1.0, 1.0, nu})[2];
    std::vector<double> y = random_vector(rng, 2, 3.0);
    if (h.value(y) > 0.0) continue;
    const std::vector<double> x = random_vector(rng, 2, 6.0);
    if (h.value(x) <= 0.0) continue;
    t.add(fejer_slack(x, subgradient_projection_step(x, h), y));
  }
  return finish_slack("fejer.planar_h3", t, kFejerFloor, start);
}

std::array<double, 3> random_relaxations(Random& rng) {
  return {between(rng, 0.1, 1.9), between(rng, 0.1, 1.9), between(rng, 0.1, 1.9)};
}

CheckResult fejer_sequential(std::size_t cases, Random& rng) {
  const auto start = Clock::now();
  SlackTracker t;
  while (t.cases < cases) {
    const auto nus = random_relaxations(rng);
    const auto hs = planar_example::constraints(nus);
    const auto op = planar_example::feasibility_operator(nus);
    const std::vector<double> y = feasible_planar_point(hs, rng);
    const std::vector<double> x = random_vector(rng, 2, 6.0);
    if (max_violation(x, op) <= 0.0) continue;
    t.add(fejer_slack(x, apply_sequential(x, op), y));
  }
  return finish_slack("fejer.sequential", t, kFejerFloor, start);
}

CheckResult fejer_averaged(std::size_t cases, Random& rng) {
  const auto start = Clock::now();
  SlackTracker t;
  const std::vector<std::vector<std::vector<std::size_t>>> layouts = {
      {{0}, {1}, {2}}, {{0, 1}, {2}}, {{2, 0}, {1}}, {{0, 1, 2}, {1, 2}}};
  while (t.cases < cases) {
    const auto nus = random_relaxations(rng);
    const auto hs = planar_example::constraints(nus);
    std::vector<FeasibilityStep> steps(hs.begin(), hs.end());
    const auto op = FeasibilityOperator::averaged(std::move(steps),
                                                  layouts[rng.below(layouts.size())]);
    const std::vector<double> y = feasible_planar_point(hs, rng);
    const std::vector<double> x = random_vector(rng, 2, 6.0);
    if (max_violation(x, op) <= 0.0) continue;
    t.add(fejer_slack(x, apply_averaged(x, op), y));
  }
  return finish_slack("fejer.averaged", t, kFejerFloor, start);
}

/// Small absolute-affine problem shared by the descent and displacement checks.
struct AffineInstance {
  std::vector<std::vector<double>> rows;
  Problem problem;
  StepSizeSchedule schedule;
  std::vector<double> x0;
  double constant = 0.0;      // C of the descent inequality
  double displacement = 0.0;  // sum_l w_l sum_{i in S_l} |a_i|
};

AffineInstance make_affine_instance(std::uint64_t seed) {
  constexpr std::size_t n = 4, m = 8, strings = 2;
  Random rng(seed);
  AffineInstance inst;
  std::vector<ConvexComponent> comps;
  for (std::size_t i = 0; i < m; ++i) {
    inst.rows.push_back(random_vector(rng, n, 1.0));
    comps.push_back(absolute_affine(inst.rows.back(), symmetric(rng, 1.0)));
  }
  inst.problem.components = std::make_shared<FunctionComponents>(n, std::move(comps));
  inst.problem.partition = make_random_partition(m, strings, seed);
  inst.x0 = random_vector(rng, n, 3.0);

  const auto& part = inst.problem.partition;
  double cross = 0.0, total = 0.0;
  for (std::size_t l = 0; l < part.string_count(); ++l) {
    double prefix = 0.0, sum = 0.0, pairs = 0.0;
    for (std::size_t s = 0; s < part.strings[l].size(); ++s) {
      const double c = norm(inst.rows[part.strings[l][s]]);
      if (s > 0) pairs += c * prefix;
      prefix += c;
      sum += c;
    }
    cross += part.weights[l] * pairs;
    total += part.weights[l] * sum;
  }
  inst.constant = 4.0 * cross + total * total;
  inst.displacement = total;

  inst.schedule.strings = strings;
  inst.schedule.parcels = m;
  const double f0 = objective(inst.problem, inst.x0);
  inst.schedule.initial = initial_step_size(f0, objective_subgradient(inst.problem, inst.x0), m);
  return inst;
}

/// Visits (state, lambda_k, O_f(lambda_k, x^k)) for each of the first iterations.
template <class Visit>
void walk_iterations(const AffineInstance& inst, std::size_t iterations, Visit visit) {
  SolverState state = initial_state(inst.x0);
  for (std::size_t k = 0; k < iterations; ++k) {
    const double step = next_step_size(inst.schedule, state.k, state.cosine);
    const std::vector<double> half = optimality_operator(state.x, step, inst.problem);
    visit(state, step, half);
    state = iterate(std::move(state), inst.problem, inst.schedule);
  }
}

}  // namespace

std::vector<CheckResult> fejer_checks(std::size_t cases, std::uint64_t seed) {
  Random rng(seed);
  std::vector<CheckResult> out;
  out.push_back(fejer_halfspace(cases, rng));
  out.push_back(fejer_ball(
      "fejer.l1_ball", cases, rng,
      [](auto c, double r, double nu) { return l1_ball(std::move(c), r, nu); }, l1_norm));
  out.push_back(fejer_ball(
      "fejer.linf_ball", cases, rng,
      [](auto c, double r, double nu) { return linf_ball(std::move(c), r, nu); }, linf_norm));
  out.push_back(fejer_planar_h3(cases, rng));
  out.push_back(fejer_sequential(cases, rng));
  out.push_back(fejer_averaged(cases, rng));
  return out;
}

CheckResult descent_inequality_check(std::size_t points, std::size_t iterations,
                                     std::uint64_t seed) {
  const auto start = Clock::now();
  const AffineInstance inst = make_affine_instance(seed);
  const double P = static_cast<double>(inst.problem.partition.string_count());
  Random rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::vector<double>> ys;
  for (std::size_t q = 0; q < points; ++q) ys.push_back(random_vector(rng, 4, 3.0));
  std::vector<double> fy;
  for (const auto& y : ys) fy.push_back(objective(inst.problem, y));

  SlackTracker t;
  walk_iterations(inst, iterations, [&](const SolverState& s, double step,
                                        const std::vector<double>& half) {
    const double fx = objective(inst.problem, s.x);
    for (std::size_t q = 0; q < ys.size(); ++q) {
      const double rhs = squared_distance(s.x, ys[q]) - (2.0 / P) * step * (fx - fy[q]) +
                         inst.constant * step * step;
      t.add(rhs - squared_distance(half, ys[q]));
    }
  });
  // Off-trajectory cases with small steps and y close to x, where the bound is tight.
  for (std::size_t q = 0; q < points * iterations; ++q) {
    const std::vector<double> x = random_vector(rng, 4, 3.0);
    std::vector<double> y = random_vector(rng, 4, 0.05);
    for (std::size_t j = 0; j < 4; ++j) y[j] += x[j];
    const double step = std::pow(10.0, between(rng, -4.0, 0.0));
    const auto half = optimality_operator(x, step, inst.problem);
    const double rhs = squared_distance(x, y) -
                       (2.0 / P) * step * (objective(inst.problem, x) -
                                           objective(inst.problem, y)) +
                       inst.constant * step * step;
    t.add(rhs - squared_distance(half, y));
  }
  auto r = finish_slack("descent_inequality", t, kDescentFloor, start);
  char buf[64];
  std::snprintf(buf, sizeof buf, "C = %.6g", inst.constant);
  r.detail = buf;
  return r;
}

CheckResult operator_displacement_check(std::size_t points, std::size_t iterations,
                                        std::uint64_t seed) {
  const auto start = Clock::now();
  const AffineInstance inst = make_affine_instance(seed);
  Random rng(seed ^ 0x51ed270b27cbd5a5ULL);
  SlackTracker t;
  walk_iterations(inst, iterations, [&](const SolverState& s, double step,
                                        const std::vector<double>& half) {
    t.add(step * inst.displacement - distance(s.x, half));
  });
  // Also from random points, not only along the trajectory.
  for (std::size_t q = 0; q < points; ++q) {
    const std::vector<double> x = random_vector(rng, 4, 3.0);
    const double step = std::pow(10.0, between(rng, -4.0, 0.0));
    const auto half = optimality_operator(x, step, inst.problem);
    t.add(step * inst.displacement - distance(x, half));
  }
  return finish_slack("operator_displacement", t, kDescentFloor, start);
}

CheckResult adjoint_check(const tomo::RadonGeometry& geometry, std::size_t pairs,
                          std::uint64_t seed) {
  const auto start = Clock::now();
  const tomo::SparseMatrix R = tomo::build_radon(geometry);
  Random rng(seed);
  double worst = 0.0;
  for (std::size_t q = 0; q < pairs; ++q) {
    std::vector<double> x(R.cols()), y(R.rows());
    for (double& e : x) e = symmetric(rng, 1.0);
    for (double& e : y) e = symmetric(rng, 1.0);
    const double lhs = dot(R.apply(x), y);
    const double rhs = dot(x, R.apply_transpose(y));
    const double scale = std::max({std::abs(lhs), std::abs(rhs),
                                   std::numeric_limits<double>::min()});
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  CheckResult r;
  r.name = "adjoint";
  r.cases = pairs;
  r.worst = worst;
  r.tolerance = 1e-10;
  r.passed = pairs > 0 && worst <= r.tolerance;
  r.seconds = seconds_since(start);
  return r;
}

namespace {

/// Sum of a few random Gaussian bumps on a tilted plane.
tomo::Image smooth_image(std::size_t rows, std::size_t cols, Random& rng) {
  tomo::Image img(rows, cols);
  const double gx = symmetric(rng, 1.0), gy = symmetric(rng, 1.0), base = between(rng, 1, 2);
  struct Bump { double cx, cy, w, amp; };
  std::vector<Bump> bumps;
  for (int b = 0; b < 3; ++b)
    bumps.push_back({symmetric(rng, 1.0), symmetric(rng, 1.0), between(rng, 0.2, 0.8),
                     symmetric(rng, 1.0)});
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double x = img.center_x(j), y = img.center_y(i);
      double v = base + gx * x + gy * y;
      for (const auto& b : bumps) {
        const double r2 = ((x - b.cx) * (x - b.cx) + (y - b.cy) * (y - b.cy)) / (b.w * b.w);
        v += b.amp * std::exp(-r2);
      }
      img(i, j) = v;
    }
  }
  return img;
}

double min_parcel_norm(const tomo::Image& x) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      const double up = i > 0 ? x(i - 1, j) : 0.0;
      const double left = j > 0 ? x(i, j - 1) : 0.0;
      m = std::min(m, std::hypot(x(i, j) - up, x(i, j) - left));
    }
  }
  return m;
}

}  // namespace

CheckResult tv_gradient_check(std::size_t points, std::uint64_t seed) {
  const auto start = Clock::now();
  Random rng(seed);
  constexpr double h = 1e-6;
  constexpr double margin = 1e-2;
  double worst = 0.0;
  std::size_t done = 0;
  while (done < points) {
    const std::size_t rows = 6 + rng.below(10), cols = 6 + rng.below(10);
    tomo::Image x = smooth_image(rows, cols, rng);
    if (min_parcel_norm(x) < margin) continue;
    const std::vector<double> g = tomo::total_variation_subgradient(x);
    std::vector<double> fd(x.size());
    for (std::size_t q = 0; q < x.size(); ++q) {
      const double saved = x.values()[q];
      x.values()[q] = saved + h;
      const double up = tomo::total_variation(x);
      x.values()[q] = saved - h;
      const double down = tomo::total_variation(x);
      x.values()[q] = saved;
      fd[q] = (up - down) / (2.0 * h);
    }
    worst = std::max(worst, distance(g, fd) / std::max(norm(g), 1e-300));
    ++done;
  }
  CheckResult r;
  r.name = "tv_gradient";
  r.cases = done;
  r.worst = worst;
  r.tolerance = 1e-5;
  r.passed = done > 0 && worst <= r.tolerance;
  r.seconds = seconds_since(start);
  return r;
}

CheckResult tv_subgradient_inequality_check(std::size_t pairs, std::uint64_t seed) {
  const auto start = Clock::now();
  Random rng(seed);
  SlackTracker t;
  for (std::size_t q = 0; q < pairs; ++q) {
    const std::size_t rows = 2 + rng.below(12), cols = 2 + rng.below(12);
    // Small integer levels make flat regions (zero parcels) common.
    const bool flat = q % 2 == 0;
    tomo::Image x(rows, cols), y(rows, cols);
    for (std::size_t p = 0; p < x.size(); ++p) {
      x.values()[p] = flat ? static_cast<double>(rng.below(3)) : symmetric(rng, 2.0);
      y.values()[p] = flat ? static_cast<double>(rng.below(3)) : symmetric(rng, 2.0);
    }
    if (q % 4 < 2) {
      for (std::size_t p = 0; p < x.size(); ++p) y.values()[p] = x.values()[p] + symmetric(rng, 1e-3);
    }
    const std::vector<double> g = tomo::total_variation_subgradient(x);
    std::vector<double> d(x.size());
    for (std::size_t p = 0; p < d.size(); ++p) d[p] = y.values()[p] - x.values()[p];
    t.add(tomo::total_variation(y) - tomo::total_variation(x) - dot(g, d));
  }
  return finish_slack("tv_subgradient_inequality", t, kDescentFloor, start);
}

CheckResult planar_trajectory_check() {
  const auto start = Clock::now();
  const auto hs = planar_example::constraints();
  const auto points = planar_example::trajectory(10);
  auto max_h = [&](const std::vector<double>& x) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& h : hs) m = std::max(m, h.value(x));
    return m;
  };
  bool monotone = true;
  for (std::size_t t = 1; t < points.size(); ++t)
    monotone = monotone && norm(points[t]) <= norm(points[t - 1]);
  const double first = std::max(0.0, max_h(points.front()));
  const double last = std::max(0.0, max_h(points.back()));
  CheckResult r;
  r.name = "planar_trajectory";
  r.cases = points.size() - 1;
  r.worst = first > 0.0 ? last / first : 0.0;
  r.tolerance = 0.1;
  r.passed = monotone && max_h(points.back()) <= max_h(points.front()) && last <= 0.1 * first;
  r.seconds = seconds_since(start);
  char buf[128];
  std::snprintf(buf, sizeof buf, "max h: %.6g -> %.6g%s", max_h(points.front()),
                max_h(points.back()), monotone ? "" : ", norm increased");
  r.detail = buf;
  return r;
}

std::vector<CheckResult> run_all_checks(std::uint64_t seed) {
  std::vector<CheckResult> out = fejer_checks(1000, seed);
  out.push_back(descent_inequality_check(100, 20, seed));
  out.push_back(operator_displacement_check(100, 20, seed));
  out.push_back(adjoint_check({64, 64, 24, 64}, 100, seed));
  out.push_back(tv_gradient_check(50, seed));
  out.push_back(tv_subgradient_inequality_check(1000, seed));
  out.push_back(planar_trajectory_check());
  return out;
}

std::string format_check(const CheckResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s %-28s cases=%zu worst=%.3e tol=%.1e %.3fs%s%s",
                r.passed ? "PASS" : "FAIL", r.name.c_str(), r.cases, r.worst, r.tolerance,
                r.seconds, r.detail.empty() ? "" : "  ", r.detail.c_str());
  return buf;
}

}  // namespace saism::harness
