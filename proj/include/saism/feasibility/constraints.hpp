#pragma once

#include <array>
#include <vector>

#include "saism/feasibility/feasibility.hpp"

namespace saism {

/// <a, x> - b <= 0.
ConstraintFunction halfspace(std::vector<double> a, double b, double relaxation = 1.0);

/// |x - center|_1 - radius <= 0. Kinks use sign(0) = 0.
ConstraintFunction l1_ball(std::vector<double> center, double radius,
                           double relaxation = 1.0);

/// |x - center|_inf - radius <= 0. The lowest-index maximal coordinate carries
/// the subgradient.
ConstraintFunction linf_ball(std::vector<double> center, double radius,
                             double relaxation = 1.0);

/// A planar feasibility example with three nonsmooth constraints:
///   h1(x) = <a, x> + 2|x|_1 - 1
///   h2(x) = 3|x|_inf - 2.5
///   h3(x) = |A x - a|_1 + 2|B x - c|_2 - 10
/// with A = [[2, 1], [-1, 3]], B = [[1, 0], [-2, 2]], a = (2, 1), c = (1, -2).
/// The origin is strictly feasible for all three.
namespace planar_example {

std::vector<ConstraintFunction> constraints(std::array<double, 3> relaxations = {0.5, 0.6,
                                                                                 0.7});
FeasibilityOperator feasibility_operator(std::array<double, 3> relaxations = {0.5, 0.6,
                                                                              0.7});
std::vector<double> start_point();

/// start_point() followed by `applications` successive images under the operator.
std::vector<std::vector<double>> trajectory(std::size_t applications = 10);

}  // namespace planar_example

}  // namespace saism
