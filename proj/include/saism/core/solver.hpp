#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "saism/core/components.hpp"
#include "saism/core/partition.hpp"
#include "saism/core/step_size.hpp"
#include "saism/feasibility/feasibility.hpp"

namespace saism {

/// min f(x) = P sum_l w_l sum_{i in S_l} f_i(x)  s.t.  x in X,
/// where X is reached through the feasibility operator.
struct Problem {
  std::shared_ptr<const ComponentSet> components;
  FeasibilityOperator feasibility;
  StringPartition partition;

  void validate() const;
};

struct SolverOptions {
  /// Upper bound on threads used for the string passes of one iteration.
  std::size_t threads = 1;
};

struct SolverState {
  std::vector<double> x;            // x^k
  std::vector<double> x_half;       // x^{k-1/2}, empty before the first iteration
  std::vector<double> x_prev;       // x^{k-1}
  std::vector<double> x_half_prev;  // x^{k-3/2}
  std::size_t k = 0;
  double cosine = 0.0;  // c_k, drives the next step size
  double step = 0.0;    // lambda_{k-1}, the step that produced x^k
  FeasibilityStats feasibility;
};

SolverState initial_state(std::vector<double> x0);

/// Sequential subgradient steps along one string, each subgradient taken at the
/// current sub-iterate. Returns the string's end-point.
std::vector<double> string_pass(std::span<const double> x,
                                std::span<const std::size_t> string, double step,
                                const ComponentSet& components);

/// sum_l w_l string_pass(x, S_l, step). Strings may run in parallel; the
/// weighted sum is always accumulated in ascending string order.
std::vector<double> optimality_operator(std::span<const double> x, double step,
                                        const Problem& problem,
                                        const SolverOptions& options = {});

/// Cosine of the angle between two directions; 0 when either is (near) zero.
double cosine_factor(std::span<const double> d_opt, std::span<const double> d_feas);

/// One full iteration: step size, optimality operator, feasibility operator,
/// cosine update.
SolverState iterate(SolverState state, const Problem& problem,
                    const StepSizeSchedule& schedule, const SolverOptions& options = {});

/// f(x) = P sum_l w_l sum_{i in S_l} f_i(x).
double objective(const Problem& problem, std::span<const double> x);

/// P sum_l w_l sum_{i in S_l} g_i(x), an element of the subdifferential of f.
std::vector<double> objective_subgradient(const Problem& problem, std::span<const double> x);

struct Budget {
  std::optional<std::size_t> max_iterations;
  std::optional<double> max_seconds;

  static Budget iterations(std::size_t n) { return {n, std::nullopt}; }
  static Budget seconds(double s) { return {std::nullopt, s}; }
};

struct RunRecord {
  std::size_t k = 0;
  double elapsed_s = 0.0;
  double f = 0.0;
  std::optional<double> tv;
  std::optional<double> rse;
  double lambda = 0.0;  // step that produced x^k
  double cosine = 0.0;  // c_{k-1}, the factor that entered lambda
};

struct RunOptions {
  SolverOptions solver;
  /// Record every `stride`-th iteration (the final iteration is always recorded).
  std::size_t record_stride = 1;
  /// When false elapsed_s is recorded as 0 and only iteration budgets are allowed.
  bool measure_time = true;
};

/// Called on the driving thread after each recorded iteration, once f is filled
/// in; it may add the optional metrics.
using Observer = std::function<void(const SolverState&, RunRecord&)>;

struct RunResult {
  SolverState state;
  std::vector<RunRecord> records;
};

/// Iterates until the budget is exhausted. Wall-clock budgets are checked only
/// between iterations, and elapsed time counts solver work, not metric evaluation.
RunResult run(std::vector<double> x0, const Problem& problem,
              const StepSizeSchedule& schedule, const Budget& budget,
              const RunOptions& options = {}, const Observer& observer = {});

}  // namespace saism
