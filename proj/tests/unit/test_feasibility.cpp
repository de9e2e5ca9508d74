#include <doctest.h>

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "saism/core/vector_ops.hpp"
#include "saism/feasibility/constraints.hpp"
#include "saism/feasibility/feasibility.hpp"
#include "saism/harness/checks.hpp"

using namespace saism;
using V = std::vector<double>;

TEST_CASE("subgradient projection on a halfspace") {
  const V x{3, 0};
  CHECK(subgradient_projection_step(x, halfspace({1, 0}, 1, 1.0)) == V{1, 0});
  CHECK(subgradient_projection_step(x, halfspace({1, 0}, 1, 0.5)) == V{2, 0});
  CHECK(subgradient_projection_step(V{0.5, 7}, halfspace({1, 0}, 1)) == V{0.5, 7});
}

TEST_CASE("zero subgradient at an infeasible point is counted and leaves x") {
  ConstraintFunction h;
  h.value = [](std::span<const double>) { return 1.0; };
  h.subgradient = [](std::span<const double> x) { return V(x.size(), 0.0); };
  FeasibilityStats stats;
  CHECK(subgradient_projection_step(V{1, 2}, h, &stats) == V{1, 2});
  CHECK(stats.stalled_steps == 1);
}

TEST_CASE("orthant projection") {
  CHECK(project_nonnegative(V{1, -2, 0}) == V{1, 0, 0});
  CHECK(project_nonnegative(V{-5}) == V{0});
  const V pos{0.5, 3, 1e-300};
  CHECK(project_nonnegative(pos) == pos);
  const V negzero = project_nonnegative(V{-0.0});
  CHECK(std::signbit(negzero[0]));
}

TEST_CASE("sequential composition") {
  const auto h1 = halfspace({1, 0}, 1);
  const auto h2 = halfspace({0, 1}, 1);
  const auto single = FeasibilityOperator::sequential({h1});
  CHECK(apply_sequential(V{4, 9}, single) == subgradient_projection_step(V{4, 9}, h1));
  const auto both = FeasibilityOperator::sequential({h1, h2, NonnegativeProjection{}});
  CHECK(apply_sequential(V{4, -9}, both) == V{1, 0});
  CHECK(apply_sequential(V{0.2, 0.3}, both) == V{0.2, 0.3});
  CHECK(FeasibilityOperator{}.apply(V{-1, 5}) == V{-1, 5});
}

TEST_CASE("averaged composition") {
  const auto h1 = halfspace({1, 0}, 1);
  const auto h2 = halfspace({0, 1}, 1);
  // Two singleton strings: midpoint of the two exact projections.
  const auto op = FeasibilityOperator::averaged({h1, h2}, {{0}, {1}});
  CHECK(apply_averaged(V{3, 5}, op) == V{2, 3});
  CHECK(apply_averaged(V{0.5, 0.25}, op) == V{0.5, 0.25});

  const auto one = FeasibilityOperator::averaged({h1, h2}, {{0, 1}});
  const auto seq = FeasibilityOperator::sequential({h1, h2});
  CHECK(apply_averaged(V{3, 5}, one) == apply_sequential(V{3, 5}, seq));

  // Fixed points stay bitwise with three strings and awkward values.
  const auto three = FeasibilityOperator::averaged({h1, h2}, {{0}, {1}, {0, 1}});
  const V x{0.1, 0.7};
  CHECK(apply_averaged(x, three) == x);
  CHECK(three.apply(x) == x);
  CHECK_THROWS_AS(apply_sequential(x, three), std::logic_error);
  CHECK_THROWS_AS(apply_averaged(x, seq), std::logic_error);
}

TEST_CASE("operator construction is validated") {
  const auto h = halfspace({1, 0}, 1, 1.95);
  CHECK_THROWS_AS(FeasibilityOperator::sequential({h}, 0.1), std::invalid_argument);
  CHECK_NOTHROW(FeasibilityOperator::sequential({h}, 0.05));
  CHECK_THROWS_AS(FeasibilityOperator::sequential({halfspace({1}, 0, 0.01)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(FeasibilityOperator::sequential({h}, 0.0), std::invalid_argument);
  const auto g = halfspace({1, 0}, 1);
  CHECK_THROWS_AS(FeasibilityOperator::averaged({g, g}, {{0}}), std::invalid_argument);
  CHECK_THROWS_AS(FeasibilityOperator::averaged({g, g}, {{0}, {}}), std::invalid_argument);
  CHECK_THROWS_AS(FeasibilityOperator::averaged({g, g}, {{0}, {2}}), std::invalid_argument);
}

TEST_CASE("ball constraints and tie-breaking") {
  const auto l1 = l1_ball({1, 1}, 1);
  CHECK(l1.value(V{1, 1}) == -1.0);
  CHECK(l1.subgradient(V{1, 3}) == V{0, 1});
  const auto linf = linf_ball({0, 0}, 1);
  CHECK(linf.value(V{2, -2}) == 1.0);
  CHECK(linf.subgradient(V{2, -2}) == V{1, 0});
  CHECK(linf.subgradient(V{-2, 2}) == V{-1, 0});
  CHECK(linf.subgradient(V{0.5, -3}) == V{0, -1});
}

TEST_CASE("planar constraints are strictly feasible at the origin") {
  const auto hs = planar_example::constraints();
  const V origin{0, 0};
  CHECK(hs[0].value(origin) == doctest::Approx(-1.0));
  CHECK(hs[1].value(origin) == doctest::Approx(-2.5));
  CHECK(hs[2].value(origin) == doctest::Approx(3 + 2 * std::sqrt(5.0) - 10));
  CHECK(hs[0].relaxation == 0.5);
  CHECK(hs[1].relaxation == 0.6);
  CHECK(hs[2].relaxation == 0.7);
}

TEST_CASE("planar trajectory matches the stored oracle run") {
  // Independent floating-point evaluation of the same three relaxed projections.
  const std::array<std::array<double, 3>, 11> oracle = {{
      {-3.0, -2.5, 16.0},
      {-0.6473721843067908, -1.388003342785305, 2.6536142088156573},
      {-0.41793667632269493, -0.9108566319858233, 0.5479461179623115},
      {-0.35778205083999154, -0.8459765698259122, 0.1424832367309019},
      {-0.3412034085352359, -0.8332062683793735, 0.03918581013869904},
      {-0.3362259254652896, -0.8316317389188755, 0.011759239015507461},
      {-0.33473232941906605, -0.8311576234074083, 0.0035280877061474314},
      {-0.3342842189822218, -0.8310152299277324, 0.0010584547887511064},
      {-0.3341497830045567, -0.8309724975698459, 0.0003175390005374368},
      {-0.33410945195504804, -0.8309596765736915, 9.526193094089308e-05},
      {-0.33409735261713613, -0.8309558301588399, 2.857860005356372e-05},
  }};
  const auto points = planar_example::trajectory(10);
  const auto hs = planar_example::constraints();
  REQUIRE(points.size() == 11);
  for (std::size_t t = 0; t < points.size(); ++t) {
    CAPTURE(t);
    CHECK(std::abs(points[t][0] - oracle[t][0]) <= 1e-12);
    CHECK(std::abs(points[t][1] - oracle[t][1]) <= 1e-12);
    double mh = hs[0].value(points[t]);
    for (const auto& h : hs) mh = std::max(mh, h.value(points[t]));
    CHECK(std::abs(mh - oracle[t][2]) <= 1e-12 * std::max(1.0, oracle[t][2]));
    if (t > 0) CHECK(norm(points[t]) <= norm(points[t - 1]));
  }
}

TEST_CASE("max violation") {
  const auto op = FeasibilityOperator::sequential({halfspace({1, 0}, 1), NonnegativeProjection{}});
  CHECK(max_violation(V{3, 0}, op) == 2.0);
  CHECK(max_violation(V{0.5, -4}, op) == 4.0);
  CHECK(max_violation(V{0.5, 1}, FeasibilityOperator{}) ==
        -std::numeric_limits<double>::infinity());
}

TEST_CASE("Fejer suites") {
  for (const auto& r : harness::fejer_checks(300, 4)) {
    CAPTURE(harness::format_check(r));
    CHECK(r.passed);
    CHECK(r.cases == 300);
  }
}
