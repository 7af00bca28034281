#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "curvesolve/continuation.hpp"
#include "curvesolve/verify.hpp"

using namespace curvesolve;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("first eigenvalue closed form") {
  CHECK(first_eigenvalue(2 * kPi) == 1.0);  // exact, not approximate
  CHECK(first_eigenvalue(kPi) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK_THROWS_AS(first_eigenvalue(0.0), std::domain_error);
  CHECK_THROWS_AS(first_eigenvalue(-1.0), std::domain_error);
}

TEST_CASE("length bound on the round sphere") {
  const auto m = ConformalMetric::round();
  const auto equator = seed_circle(0.0, Vec3::UnitZ(), 256);
  const auto check = check_length_bound(equator, m);
  CHECK(check.ok);
  CHECK(check.bound == doctest::Approx(2 * kPi * std::sqrt(2.0)).epsilon(1e-9));
  // the equator leaves exactly the sqrt(2) margin
  CHECK(check.bound / check.length == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("reilly corollary agrees with the length bound") {
  const ConformalMetric m({{2, 0, 0.1}}, 1.0);
  for (double kappa : {0.05, 0.4, 1.0}) {
    const auto c = resample_constant_speed(seed_circle(kappa, Vec3::UnitZ(), 128), m);
    const auto lb = check_length_bound(c, m);
    const auto rc = check_reilly_corollary(c, m);
    CHECK(lb.ok == rc.ok);
    CHECK(rc.min_k <= rc.two_lambda1 + 1e-8);
  }
}

TEST_CASE("gauss-bonnet closes on round-sphere circles") {
  const auto m = ConformalMetric::round();
  for (double kappa : {0.3, 1.0, 2.0}) {
    const auto c = seed_circle(kappa, Vec3(0, 1, 1).normalized(), 256);
    CHECK(check_gauss_bonnet(c, m) < 5e-3);
  }
}

TEST_CASE("gauss-bonnet closes on a perturbed metric") {
  const ConformalMetric m({{2, 0, 0.1}}, 1.0);
  const auto spec = CurvatureSpec(0.2, 1.0);
  auto c = seed_circle(0.2, Vec3::UnitZ(), 256);
  // push the seed to an actual solution of the perturbed problem first
  ContinuationSchedule sched = ContinuationSchedule::l_shaped(1.0, 2, 11);
  const auto branch = continue_path(c, m, spec, sched, {}, "gb");
  REQUIRE(branch.complete());
  CHECK(check_gauss_bonnet(branch.terminal().curve, m) < 5e-3);
}

TEST_CASE("certify fills every field and flags failures in notes") {
  const auto m = ConformalMetric::round();
  const auto spec = CurvatureSpec(1.0, 1.0);
  const auto good = resample_constant_speed(seed_circle(1.0, Vec3::UnitZ(), 256), m);
  const auto d = certify(good, m, spec);
  CHECK(d.length == doctest::Approx(2 * kPi / std::sqrt(2.0)).epsilon(1e-7));
  CHECK(d.lambda1 == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(d.min_gauss_curvature == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.length_bound == doctest::Approx(2 * kPi * std::sqrt(2.0)).epsilon(1e-9));
  CHECK(d.embedded);
  CHECK(d.max_curvature_error < 1e-6);
  CHECK(d.gauss_bonnet_residual < 5e-3);
  CHECK(d.speed_variation < 1e-8);
  CHECK(d.notes.empty());
  CHECK(d.all_ok(1e-5));

  // wrong prescribed curvature: certificate reports, does not throw
  const auto bad = certify(good, m, CurvatureSpec(2.0, 1.0));
  CHECK(bad.max_curvature_error > 0.5);
}
