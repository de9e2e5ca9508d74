#include "saism/feasibility/constraints.hpp"

#include <cmath>
#include <stdexcept>

#include "saism/core/vector_ops.hpp"

namespace saism {

ConstraintFunction halfspace(std::vector<double> a, double b, double relaxation) {
  ConstraintFunction h;
  h.name = "halfspace";
  h.relaxation = relaxation;
  h.value = [a, b](std::span<const double> x) { return dot(a, x) - b; };
  h.subgradient = [a](std::span<const double>) { return a; };
  return h;
}

ConstraintFunction l1_ball(std::vector<double> center, double radius, double relaxation) {
  ConstraintFunction h;
  h.name = "l1_ball";
  h.relaxation = relaxation;
  h.value = [center, radius](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += std::abs(x[j] - center[j]);
    return s - radius;
  };
  h.subgradient = [center](std::span<const double> x) {
    std::vector<double> g(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) g[j] = sign(x[j] - center[j]);
    return g;
  };
  return h;
}

namespace {

std::size_t argmax_abs(std::span<const double> v) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < v.size(); ++j)
    if (std::abs(v[j]) > std::abs(v[best])) best = j;
  return best;
}

}  // namespace

ConstraintFunction linf_ball(std::vector<double> center, double radius, double relaxation) {
  ConstraintFunction h;
  h.name = "linf_ball";
  h.relaxation = relaxation;
  h.value = [center, radius](std::span<const double> x) {
    double m = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) m = std::max(m, std::abs(x[j] - center[j]));
    return m - radius;
  };
  h.subgradient = [center](std::span<const double> x) {
    std::vector<double> d(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) d[j] = x[j] - center[j];
    std::vector<double> g(x.size(), 0.0);
    if (!d.empty()) {
      const std::size_t j = argmax_abs(d);
      g[j] = sign(d[j]);
    }
    return g;
  };
  return h;
}

namespace planar_example {

namespace {

constexpr double kA[2][2] = {{2.0, 1.0}, {-1.0, 3.0}};
constexpr double kB[2][2] = {{1.0, 0.0}, {-2.0, 2.0}};
constexpr double ka[2] = {2.0, 1.0};
constexpr double kc[2] = {1.0, -2.0};

void check_planar(std::span<const double> x) {
  if (x.size() != 2) throw std::invalid_argument("planar example expects 2-D points");
}

}  // namespace

std::vector<ConstraintFunction> constraints(std::array<double, 3> relaxations) {
  ConstraintFunction h1;
  h1.name = "h1";
  h1.relaxation = relaxations[0];
  h1.value = [](std::span<const double> x) {
    check_planar(x);
    return ka[0] * x[0] + ka[1] * x[1] + 2.0 * (std::abs(x[0]) + std::abs(x[1])) - 1.0;
  };
  h1.subgradient = [](std::span<const double> x) {
    return std::vector<double>{ka[0] + 2.0 * sign(x[0]), ka[1] + 2.0 * sign(x[1])};
  };

  ConstraintFunction h2;
  h2.name = "h2";
  h2.relaxation = relaxations[1];
  h2.value = [](std::span<const double> x) {
    check_planar(x);
    return 3.0 * std::max(std::abs(x[0]), std::abs(x[1])) - 2.5;
  };
  h2.subgradient = [](std::span<const double> x) {
    std::vector<double> g(2, 0.0);
    const std::size_t j = argmax_abs(x);
    g[j] = 3.0 * sign(x[j]);
    return g;
  };

  ConstraintFunction h3;
  h3.name = "h3";
  h3.relaxation = relaxations[2];
  h3.value = [](std::span<const double> x) {
    check_planar(x);
    double l1 = 0.0, l2 = 0.0;
    for (int r = 0; r < 2; ++r) {
      l1 += std::abs(kA[r][0] * x[0] + kA[r][1] * x[1] - ka[r]);
      const double e = kB[r][0] * x[0] + kB[r][1] * x[1] - kc[r];
      l2 += e * e;
    }
    return l1 + 2.0 * std::sqrt(l2) - 10.0;
  };
  h3.subgradient = [](std::span<const double> x) {
    double s[2], e[2];
    for (int r = 0; r < 2; ++r) {
      s[r] = sign(kA[r][0] * x[0] + kA[r][1] * x[1] - ka[r]);
      e[r] = kB[r][0] * x[0] + kB[r][1] * x[1] - kc[r];
    }
    const double ne = std::sqrt(e[0] * e[0] + e[1] * e[1]);
    std::vector<double> g(2, 0.0);
    for (int col = 0; col < 2; ++col) {
      g[col] = kA[0][col] * s[0] + kA[1][col] * s[1];
      if (ne > 0.0) g[col] += 2.0 * (kB[0][col] * e[0] + kB[1][col] * e[1]) / ne;
    }
    return g;
  };
  return {h1, h2, h3};
}

FeasibilityOperator feasibility_operator(std::array<double, 3> relaxations) {
  std::vector<FeasibilityStep> steps;
  for (auto& h : constraints(relaxations)) steps.emplace_back(std::move(h));
  return FeasibilityOperator::sequential(std::move(steps));
}

std::vector<double> start_point() { return {-3.0, -2.5}; }

std::vector<std::vector<double>> trajectory(std::size_t applications) {
  const FeasibilityOperator op = feasibility_operator();
  std::vector<std::vector<double>> points{start_point()};
  for (std::size_t t = 0; t < applications; ++t) points.push_back(op.apply(points.back()));
  return points;
}

}  // namespace planar_example

}  // namespace saism
