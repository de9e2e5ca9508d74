#include "saism/feasibility/feasibility.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "saism/core/vector_ops.hpp"

namespace saism {

namespace {

void validate_steps(const std::vector<FeasibilityStep>& steps, double sigma) {
  if (!(sigma > 0.0 && sigma <= 1.0))
    throw std::invalid_argument("sigma must lie in (0, 1], got " + std::to_string(sigma));
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto* h = std::get_if<ConstraintFunction>(&steps[i]);
    if (!h) continue;
    if (!h->value || !h->subgradient)
      throw std::invalid_argument("constraint " + std::to_string(i) +
                                  " lacks a value or subgradient");
    if (!(h->relaxation >= sigma && h->relaxation <= 2.0 - sigma))
      throw std::invalid_argument("relaxation " + std::to_string(h->relaxation) +
                                  " of constraint " + std::to_string(i) +
                                  " outside [sigma, 2 - sigma]");
  }
}

}  // namespace

FeasibilityOperator FeasibilityOperator::sequential(std::vector<FeasibilityStep> steps,
                                                    double sigma) {
  validate_steps(steps, sigma);
  FeasibilityOperator op;
  op.mode_ = FeasibilityMode::sequential;
  op.steps_ = std::move(steps);
  op.sigma_ = sigma;
  return op;
}

FeasibilityOperator FeasibilityOperator::averaged(
    std::vector<FeasibilityStep> steps, std::vector<std::vector<std::size_t>> strings,
    double sigma) {
  validate_steps(steps, sigma);
  if (strings.empty()) throw std::invalid_argument("averaged operator needs strings");
  std::vector<char> covered(steps.size(), 0);
  for (std::size_t j = 0; j < strings.size(); ++j) {
    if (strings[j].empty())
      throw std::invalid_argument("feasibility string " + std::to_string(j) + " is empty");
    for (std::size_t i : strings[j]) {
      if (i >= steps.size())
        throw std::invalid_argument("feasibility string " + std::to_string(j) +
                                    " references step " + std::to_string(i));
      covered[i] = 1;
    }
  }
  for (std::size_t i = 0; i < steps.size(); ++i)
    if (!covered[i])
      throw std::invalid_argument("step " + std::to_string(i) +
                                  " belongs to no feasibility string");
  FeasibilityOperator op;
  op.mode_ = FeasibilityMode::averaged;
  op.steps_ = std::move(steps);
  op.strings_ = std::move(strings);
  op.sigma_ = sigma;
  return op;
}

std::vector<double> FeasibilityOperator::apply(std::span<const double> x,
                                               FeasibilityStats* stats) const {
  return mode_ == FeasibilityMode::averaged ? apply_averaged(x, *this, stats)
                                            : apply_sequential(x, *this, stats);
}

std::vector<double> subgradient_projection_step(std::span<const double> x,
                                                const ConstraintFunction& h,
                                                FeasibilityStats* stats) {
  std::vector<double> out(x.begin(), x.end());
  if (stats) ++stats->applied_steps;
  const double hx = h.value(x);
  if (!(hx > 0.0)) return out;
  const std::vector<double> g = h.subgradient(x);
  const double g2 = squared_norm(g);
  if (g2 == 0.0) {
    if (stats) ++stats->stalled_steps;
    return out;
  }
  const double t = h.relaxation * hx / g2;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] -= t * g[j];
  return out;
}

std::vector<double> project_nonnegative(std::span<const double> x) {
  std::vector<double> out(x.begin(), x.end());
  for (double& v : out)
    if (v < 0.0) v = 0.0;
  return out;
}

std::vector<double> apply_step(std::span<const double> x, const FeasibilityStep& step,
                               FeasibilityStats* stats) {
  if (const auto* h = std::get_if<ConstraintFunction>(&step))
    return subgradient_projection_step(x, *h, stats);
  if (stats) ++stats->applied_steps;
  return project_nonnegative(x);
}

namespace {

std::vector<double> run_chain(std::span<const double> x,
                              const std::vector<FeasibilityStep>& steps,
                              std::span<const std::size_t> order, FeasibilityStats* stats) {
  std::vector<double> s(x.begin(), x.end());
  for (std::size_t i : order) s = apply_step(s, steps[i], stats);
  return s;
}

}  // namespace

std::vector<double> apply_sequential(std::span<const double> x,
                                     const FeasibilityOperator& op,
                                     FeasibilityStats* stats) {
  if (op.mode() != FeasibilityMode::sequential)
    throw std::logic_error("apply_sequential on an averaged feasibility operator");
  std::vector<double> s(x.begin(), x.end());
  for (const auto& step : op.steps()) s = apply_step(s, step, stats);
  return s;
}

std::vector<double> apply_averaged(std::span<const double> x,
                                   const FeasibilityOperator& op,
                                   FeasibilityStats* stats) {
  if (op.mode() != FeasibilityMode::averaged)
    throw std::logic_error("apply_averaged on a sequential feasibility operator");
  // Running mean: identical string outputs leave the mean bit-identical.
  std::vector<double> mean;
  std::size_t count = 0;
  for (const auto& string : op.strings()) {
    std::vector<double> v = run_chain(x, op.steps(), string, stats);
    ++count;
    if (count == 1) {
      mean = std::move(v);
      continue;
    }
    const double inv = 1.0 / static_cast<double>(count);
    for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += (v[j] - mean[j]) * inv;
  }
  return mean;
}

double max_violation(std::span<const double> x, const FeasibilityOperator& op) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& step : op.steps()) {
    if (const auto* h = std::get_if<ConstraintFunction>(&step)) {
      worst = std::max(worst, h->value(x));
    } else {
      double d2 = 0.0;
      for (double v : x)
        if (v < 0.0) d2 += v * v;
      worst = std::max(worst, std::sqrt(d2));
    }
  }
  return worst;
}

}  // namespace saism
