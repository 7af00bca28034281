#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "curvesolve/continuation.hpp"

using namespace curvesolve;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("l-shaped schedule raises s first, then t") {
  // 5 waypoints on the s-leg, then 3 more climbing t (corner shared)
  const auto sched = ContinuationSchedule::l_shaped(0.8, 5, 4);
  REQUIRE(sched.path.size() == 5 + 4 - 1);
  // first leg: t = 0, s climbing to the target
  for (int i = 0; i < 5; ++i) {
    CHECK(sched.path[i].first == 0.0);
  }
  CHECK(sched.path[0].second == 0.0);
  CHECK(sched.path[4].second == doctest::Approx(0.8));
  // second leg: s fixed, t climbing to 1
  for (size_t i = 5; i < sched.path.size(); ++i) {
    CHECK(sched.path[i].second == doctest::Approx(0.8));
  }
  CHECK(sched.path.back().first == doctest::Approx(1.0));
}

TEST_CASE("seed circles: great circle and small circles") {
  const auto m = ConformalMetric::round();
  const auto equator = seed_circle(0.0, Vec3::UnitZ(), 128);
  CHECK(curve_length(equator, m) == doctest::Approx(2 * kPi).epsilon(1e-6));
  const auto small = seed_circle(1.0, Vec3::UnitX(), 128);
  CHECK(curve_length(small, m) == doctest::Approx(2 * kPi / std::sqrt(2.0)).epsilon(1e-6));
  // axis alignment
  double min_dot = 1.0;
  for (const auto& p : small.nodes()) min_dot = std::min(min_dot, p.dot(Vec3::UnitX()));
  CHECK(min_dot == doctest::Approx(std::cos(kPi / 4)).epsilon(1e-12));
}

TEST_CASE("continuation completes on the round sphere at fixed t") {
  const auto m = ConformalMetric::round();
  const CurvatureSpec spec(0.5, 1.0);
  auto sched = ContinuationSchedule::l_shaped(1.0, 6, 2);
  const auto branch = continue_path(seed_circle(0.0, Vec3::UnitZ(), 96), m, spec,
                                    sched, {}, "round");
  REQUIRE(branch.complete());
  CHECK(branch.states.size() >= sched.path.size());
  // terminal curve solves kappa = 0.5: radius atan2(1, 0.5)
  const double r = std::atan2(1.0, 0.5);
  CHECK(curve_length(branch.terminal().curve, m) ==
        doctest::Approx(2 * kPi * std::sin(r)).epsilon(1e-6));
  // every accepted state is certified
  for (const auto& st : branch.states) {
    CHECK(st.diagnostics.embedded);
    CHECK(st.diagnostics.length <= st.diagnostics.length_bound + 1e-8);
    CHECK(st.diagnostics.speed_variation < 1e-8);
  }
  // states are continuous along the branch
  for (size_t i = 1; i < branch.states.size(); ++i) {
    CHECK(aligned_distance(branch.states[i - 1].curve, branch.states[i].curve) < 0.2);
  }
}

TEST_CASE("continuation across the metric homotopy") {
  const ConformalMetric m({{2, 0, 0.1}}, 1.0);
  const CurvatureSpec spec(0.05, 1.0);
  auto sched = ContinuationSchedule::l_shaped(1.0, 3, 6);
  // at n = 96 the difference-stencil floor of the node-speed spread is
  // ~2e-7 on the deformed metric; the strict 1e-8 monitor belongs to
  // n = 256 runs
  sched.monitors.speed = false;
  const auto branch = continue_path(seed_circle(0.05, Vec3::UnitZ(), 96), m, spec,
                                    sched, {}, "homotopy");
  REQUIRE(branch.complete());
  CHECK(branch.terminal().t == doctest::Approx(1.0));
  CHECK(branch.terminal().diagnostics.max_curvature_error < 1e-6);
  for (const auto& st : branch.states) {
    CHECK(st.diagnostics.speed_variation < 1e-6);
  }
}

TEST_CASE("monitor violation terminates the branch with forensic state") {
  // large curvature shrinks the curve until its node spacing falls
  // below the clearance: the embeddedness monitor must stop the branch
  // and keep the offending state for inspection.
  const auto m = ConformalMetric::round();
  const CurvatureSpec spec(8.0, 1.0);
  auto sched = ContinuationSchedule::l_shaped(1.0, 16, 2);
  sched.clearance = 0.05;
  sched.continuity_threshold = 1.0;  // the shrinking steps are large; let them pass
  const auto branch = continue_path(seed_circle(0.0, Vec3::UnitZ(), 64), m, spec,
                                    sched, {}, "tight");
  CHECK(branch.status == BranchStatus::monitor_violation);
  CHECK_FALSE(branch.message.empty());
  REQUIRE(branch.states.size() >= 2);
  CHECK_FALSE(branch.states.back().diagnostics.embedded);
}

TEST_CASE("two-branch run finds distinct orbits") {
  const ConformalMetric m({{2, 0, 0.1}}, 1.0);
  const CurvatureSpec spec(0.05, 1.0);
  auto sched = ContinuationSchedule::l_shaped(1.0, 3, 6);
  sched.monitors.speed = false;  // stencil floor at n = 96, see above
  const auto result = two_branch_run(m, spec, Vec3::UnitZ(), Vec3::UnitX(), sched,
                                     {}, 0.1, 96, true);
  REQUIRE(result.branch_a.complete());
  REQUIRE(result.branch_b.complete());
  CHECK(result.success);
  CHECK_FALSE(result.merged_warning);
  CHECK(result.distinctness > 0.1);
}

TEST_CASE("merged branches warn instead of failing") {
  // same axis twice: identical orbits, distinctness ~ 0
  const auto m = ConformalMetric::round();
  const CurvatureSpec spec(0.3, 1.0);
  auto sched = ContinuationSchedule::l_shaped(1.0, 4, 2);
  const auto result = two_branch_run(m, spec, Vec3::UnitZ(), Vec3::UnitZ(), sched,
                                     {}, 0.1, 64, false);
  REQUIRE(result.branch_a.complete());
  REQUIRE(result.branch_b.complete());
  CHECK(result.merged_warning);
  CHECK(result.distinctness < 0.1);
}
