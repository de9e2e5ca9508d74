#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "saism/tomo/radon.hpp"

namespace saism::harness {

/// Outcome of one randomized invariant suite. `worst` is the smallest slack
/// (or largest error, for tolerance-style checks) over all cases.
struct CheckResult {
  std::string name;
  bool passed = false;
  std::size_t cases = 0;
  double worst = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;
  std::string detail;
};

/// |S(x) - y|^2 <= |x - y|^2 for feasible y, per constraint family: halfspace,
/// l1 ball, l-inf ball, the planar h3, then the sequential and averaged planar
/// operators. Slack tolerance -1e-10.
std::vector<CheckResult> fejer_checks(std::size_t cases = 1000, std::uint64_t seed = 1);

/// Descent inequality of the averaged optimality operator on a random
/// 4-variable, 8-component absolute-affine problem split into two strings,
/// with C built from the row norms. Slack tolerance -1e-9.
CheckResult descent_inequality_check(std::size_t points = 100, std::size_t iterations = 20,
                                     std::uint64_t seed = 1);

/// |x - O_f(lambda, x)| <= lambda sum_l w_l sum_{i in S_l} |a_i| on the same instance.
CheckResult operator_displacement_check(std::size_t points = 100, std::size_t iterations = 20,
                                        std::uint64_t seed = 1);

/// Relative mismatch of <Rx, y> and <x, R^T y> over random pairs.
CheckResult adjoint_check(const tomo::RadonGeometry& geometry = {64, 64, 24, 64},
                          std::size_t pairs = 100, std::uint64_t seed = 1);

/// TV subgradient against central differences at random smooth images where
/// every parcel norm is bounded away from zero. Tolerance 1e-5 relative.
CheckResult tv_gradient_check(std::size_t points = 50, std::uint64_t seed = 1);

/// TV(y) >= TV(x) + <g(x), y - x> over random pairs, including images with
/// flat regions. Slack tolerance -1e-9.
CheckResult tv_subgradient_inequality_check(std::size_t pairs = 1000, std::uint64_t seed = 1);

/// Ten applications of the planar feasibility operator from (-3, -2.5):
/// nonincreasing distance to the origin and at least a 90% drop in the
/// largest positive violation.
CheckResult planar_trajectory_check();

std::vector<CheckResult> run_all_checks(std::uint64_t seed = 1);

std::string format_check(const CheckResult& result);

}  // namespace saism::harness
