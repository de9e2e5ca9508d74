#include "saism/core/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>

#include <omp.h>

#include "saism/core/vector_ops.hpp"

namespace saism {

void Problem::validate() const {
  if (!components) throw std::invalid_argument("problem has no components");
  partition.validate(components->size());
}

SolverState initial_state(std::vector<double> x0) {
  SolverState s;
  s.x = std::move(x0);
  return s;
}

std::vector<double> string_pass(std::span<const double> x,
                                std::span<const std::size_t> string, double step,
                                const ComponentSet& components) {
  if (x.size() != components.dimension())
    throw std::invalid_argument("iterate has dimension " + std::to_string(x.size()) +
                                ", components expect " +
                                std::to_string(components.dimension()));
  std::vector<double> y(x.begin(), x.end());
  for (std::size_t i : string) {
    if (i >= components.size())
      throw std::out_of_range("component index " + std::to_string(i) + " out of range");
    components.step(i, y, step);
  }
  return y;
}

std::vector<double> optimality_operator(std::span<const double> x, double step,
                                        const Problem& problem,
                                        const SolverOptions& options) {
  const auto& strings = problem.partition.strings;
  const auto& weights = problem.partition.weights;
  const std::size_t count = strings.size();
  std::vector<std::vector<double>> ends(count);
  std::vector<std::exception_ptr> errors(count);
  const int threads =
      static_cast<int>(std::max<std::size_t>(1, std::min(options.threads, count)));

#pragma omp parallel for num_threads(threads) schedule(static)
  for (std::ptrdiff_t l = 0; l < static_cast<std::ptrdiff_t>(count); ++l) {
    try {
      ends[l] = string_pass(x, strings[l], step, *problem.components);
    } catch (...) {
      errors[l] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<double> sum(x.size(), 0.0);
  for (std::size_t l = 0; l < count; ++l) {
    const double w = weights[l];
    const auto& e = ends[l];
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += w * e[j];
  }
  return sum;
}

double cosine_factor(std::span<const double> d_opt, std::span<const double> d_feas) {
  const double na = norm(d_opt);
  const double nb = norm(d_feas);
  if (na < 1e-300 || nb < 1e-300) return 0.0;
  double c = dot(d_opt, d_feas) / (na * nb);
  if (!std::isfinite(c)) {
    // Overflow in the plain formula: redo it on max-scaled copies.
    auto scaled = [](std::span<const double> v) {
      double m = 0.0;
      for (double e : v) m = std::max(m, std::abs(e));
      std::vector<double> out(v.begin(), v.end());
      for (double& e : out) e /= m;
      return out;
    };
    const auto a = scaled(d_opt), b = scaled(d_feas);
    c = dot(a, b) / (norm(a) * norm(b));
  }
  return std::clamp(c, -1.0, 1.0);
}

SolverState iterate(SolverState state, const Problem& problem,
                    const StepSizeSchedule& schedule, const SolverOptions& options) {
  const double step = next_step_size(schedule, state.k, state.cosine);
  std::vector<double> half = optimality_operator(state.x, step, problem, options);
  std::vector<double> next = problem.feasibility.apply(half, &state.feasibility);

  std::vector<double> d_opt(half.size()), d_feas(half.size());
  for (std::size_t j = 0; j < half.size(); ++j) {
    d_opt[j] = half[j] - state.x[j];
    d_feas[j] = next[j] - half[j];
  }

  state.x_half_prev = std::move(state.x_half);
  state.x_prev = std::move(state.x);
  state.x_half = std::move(half);
  state.x = std::move(next);
  state.cosine = cosine_factor(d_opt, d_feas);
  state.step = step;
  ++state.k;
  return state;
}

double objective(const Problem& problem, std::span<const double> x) {
  const auto& p = problem.partition;
  const double scale = static_cast<double>(p.string_count());
  double total = 0.0;
  for (std::size_t l = 0; l < p.string_count(); ++l) {
    double partial = 0.0;
    for (std::size_t i : p.strings[l]) partial += problem.components->value(i, x);
    total += scale * p.weights[l] * partial;
  }
  return total;
}

std::vector<double> objective_subgradient(const Problem& problem,
                                          std::span<const double> x) {
  const auto& p = problem.partition;
  const double scale = static_cast<double>(p.string_count());
  std::vector<double> total(x.size(), 0.0), g(x.size());
  for (std::size_t l = 0; l < p.string_count(); ++l) {
    const double w = scale * p.weights[l];
    for (std::size_t i : p.strings[l]) {
      problem.components->subgradient(i, x, g);
      for (std::size_t j = 0; j < g.size(); ++j) total[j] += w * g[j];
    }
  }
  return total;
}

RunResult run(std::vector<double> x0, const Problem& problem,
              const StepSizeSchedule& schedule, const Budget& budget,
              const RunOptions& options, const Observer& observer) {
  problem.validate();
  schedule.validate();
  if (!budget.max_iterations && !budget.max_seconds)
    throw std::invalid_argument("run needs an iteration or time budget");
  if (budget.max_seconds && !(*budget.max_seconds > 0.0))
    throw std::invalid_argument("time budget must be positive");
  if (budget.max_seconds && !options.measure_time)
    throw std::invalid_argument("a time budget requires time measurement");
  if (options.record_stride == 0) throw std::invalid_argument("record stride must be >= 1");
  if (x0.size() != problem.components->dimension())
    throw std::invalid_argument("x0 has dimension " + std::to_string(x0.size()) +
                                ", components expect " +
                                std::to_string(problem.components->dimension()));

  using clock = std::chrono::steady_clock;
  RunResult result;
  result.state = initial_state(std::move(x0));
  double elapsed = 0.0;

  auto exhausted = [&] {
    if (budget.max_iterations && result.state.k >= *budget.max_iterations) return true;
    if (budget.max_seconds && elapsed >= *budget.max_seconds) return true;
    return false;
  };

  while (!exhausted()) {
    const double cosine_in = result.state.cosine;
    const auto t0 = clock::now();
    result.state = iterate(std::move(result.state), problem, schedule, options.solver);
    if (options.measure_time)
      elapsed += std::chrono::duration<double>(clock::now() - t0).count();

    const bool last = exhausted();
    if (result.state.k % options.record_stride != 0 && !last) continue;
    RunRecord rec;
    rec.k = result.state.k;
    rec.elapsed_s = elapsed;
    rec.f = objective(problem, result.state.x);
    rec.lambda = result.state.step;
    rec.cosine = cosine_in;
    if (observer) observer(result.state, rec);
    result.records.push_back(rec);
  }
  return result;
}

}  // namespace saism
