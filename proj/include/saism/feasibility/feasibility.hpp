#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace saism {

/// Convex h : R^n -> R describing the sublevel set {x : h(x) <= 0}, with a
/// subgradient oracle and the relaxation used by its projection step.
struct ConstraintFunction {
  std::function<double(std::span<const double>)> value;
  std::function<std::vector<double>(std::span<const double>)> subgradient;
  double relaxation = 1.0;
  std::string name;
};

/// Exact Euclidean projection onto the nonnegative orthant.
struct NonnegativeProjection {};

using FeasibilityStep = std::variant<ConstraintFunction, NonnegativeProjection>;

/// Counters filled by the operators when a caller asks for them.
struct FeasibilityStats {
  /// Steps where h(x) > 0 but the subgradient was zero, so x was returned as is.
  std::size_t stalled_steps = 0;
  std::size_t applied_steps = 0;
};

enum class FeasibilityMode { sequential, averaged };

/// Ordered composition of feasibility steps, optionally organised into strings
/// whose outputs are averaged. A default-constructed operator is the identity.
class FeasibilityOperator {
 public:
  static constexpr double default_sigma = 0.1;

  FeasibilityOperator() = default;

  /// Applies steps[0], steps[1], ... in order. Every relaxation must lie in
  /// [sigma, 2 - sigma] with sigma in (0, 1].
  static FeasibilityOperator sequential(std::vector<FeasibilityStep> steps,
                                        double sigma = default_sigma);

  /// Each string is a list of step indices run sequentially from the same
  /// input; the results are averaged uniformly. Strings must be non-empty and
  /// together cover every step.
  static FeasibilityOperator averaged(std::vector<FeasibilityStep> steps,
                                      std::vector<std::vector<std::size_t>> strings,
                                      double sigma = default_sigma);

  FeasibilityMode mode() const { return mode_; }
  const std::vector<FeasibilityStep>& steps() const { return steps_; }
  const std::vector<std::vector<std::size_t>>& strings() const { return strings_; }
  double sigma() const { return sigma_; }
  bool is_identity() const { return steps_.empty(); }

  /// Dispatches to apply_sequential or apply_averaged.
  std::vector<double> apply(std::span<const double> x,
                            FeasibilityStats* stats = nullptr) const;

 private:
  FeasibilityMode mode_ = FeasibilityMode::sequential;
  std::vector<FeasibilityStep> steps_;
  std::vector<std::vector<std::size_t>> strings_;
  double sigma_ = default_sigma;
};

/// Relaxed subgradient projection with Polyak-type step:
/// x - nu [h(x)]_+ / |g|^2 g for g in dh(x); x itself when g = 0 or h(x) <= 0.
std::vector<double> subgradient_projection_step(std::span<const double> x,
                                                const ConstraintFunction& h,
                                                FeasibilityStats* stats = nullptr);

/// Componentwise max(0, x_j). Entries that are already nonnegative keep their bits.
std::vector<double> project_nonnegative(std::span<const double> x);

std::vector<double> apply_step(std::span<const double> x, const FeasibilityStep& step,
                               FeasibilityStats* stats = nullptr);

std::vector<double> apply_sequential(std::span<const double> x,
                                     const FeasibilityOperator& op,
                                     FeasibilityStats* stats = nullptr);

std::vector<double> apply_averaged(std::span<const double> x,
                                   const FeasibilityOperator& op,
                                   FeasibilityStats* stats = nullptr);

/// max over constraint steps of h_i(x); -inf when there are none. The orthant
/// step contributes its distance function.
double max_violation(std::span<const double> x, const FeasibilityOperator& op);

}  // namespace saism
