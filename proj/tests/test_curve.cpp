#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "curvesolve/continuation.hpp"
#include "curvesolve/curve.hpp"

using namespace curvesolve;

namespace {

const double kPi = std::acos(-1.0);

// Latitude circle of geodesic radius r about +z, sampled uniformly.
DiscreteCurve latitude(double r, int n, double phase = 0.0) {
  std::vector<Vec3> nodes(n);
  for (int k = 0; k < n; ++k) {
    const double a = 2 * kPi * k / n + phase;
    nodes[k] = Vec3(std::sin(r) * std::cos(a), std::sin(r) * std::sin(a), std::cos(r));
  }
  return DiscreteCurve(std::move(nodes));
}

// Inverse stereographic image (from the north pole onto the equatorial
// plane) of a plane curve; crossings survive because the chart is a
// diffeomorphism.
DiscreteCurve from_plane(int n, const std::function<std::pair<double, double>(double)>& w) {
  std::vector<Vec3> nodes(n);
  for (int k = 0; k < n; ++k) {
    auto [u, v] = w(2 * kPi * k / n);
    const double d = 1 + u * u + v * v;
    nodes[k] = Vec3(2 * u / d, 2 * v / d, (u * u + v * v - 1) / d);
  }
  return DiscreteCurve(std::move(nodes));
}

}  // namespace

TEST_CASE("construction guards") {
  CHECK_THROWS_AS(latitude(0.5, 8), std::domain_error);  // too few nodes
  std::vector<Vec3> bad(32, Vec3::UnitZ());
  bad[3] = Vec3(0, 0, 1.5);
  CHECK_THROWS_AS(DiscreteCurve{bad}, std::domain_error);
}

TEST_CASE("derivative stencil is fourth order on a great circle") {
  // velocity of the equator has |v| = 2 pi exactly in theta-parameter
  double prev_err = 0.0;
  for (int n : {64, 128, 256}) {
    const auto c = latitude(kPi / 2, n);
    const auto d = derivatives(c);
    double err = 0.0;
    for (int k = 0; k < n; ++k) {
      const double a = 2 * kPi * k / n;
      const Vec3 exact_v = 2 * kPi * Vec3(-std::sin(a), std::cos(a), 0);
      const Vec3 exact_a = -4 * kPi * kPi * Vec3(std::cos(a), std::sin(a), 0);
      err = std::max(err, (d.velocity[k] - exact_v).norm());
      err = std::max(err, (d.acceleration[k] - exact_a).norm() / (2 * kPi));
    }
    if (prev_err > 0.0) {
      const double ratio = prev_err / err;
      CHECK(ratio > 12.0);  // h^4 halving gives ~16
      CHECK(ratio < 20.0);
    }
    prev_err = err;
  }
}

TEST_CASE("latitude circle curvature and length against closed forms") {
  const auto m = ConformalMetric::round();
  for (double r : {kPi / 6, kPi / 4, kPi / 2, 2.0}) {
    const auto c = latitude(r, 256);
    const auto kappa = geodesic_curvature(c, m);
    const double want = std::cos(r) / std::sin(r);
    for (double k : kappa) CHECK(std::abs(k - want) < 1e-6);
    CHECK(std::abs(curve_length(c, m) - 2 * kPi * std::sin(r)) < 1e-6);
  }
}

TEST_CASE("resampling: constant speed and idempotence") {
  const ConformalMetric m({{2, 1, 0.15}, {3, -1, 0.08}}, 0.8);
  // unevenly parametrized latitude circle
  std::vector<Vec3> nodes(128);
  for (int k = 0; k < 128; ++k) {
    const double a = 2 * kPi * k / 128 + 0.3 * std::sin(2 * kPi * k / 128);
    nodes[k] = Vec3(std::sin(1.0) * std::cos(a), std::sin(1.0) * std::sin(a), std::cos(1.0));
  }
  const auto c = DiscreteCurve(nodes);
  const auto r1 = resample_constant_speed(c, m);
  CHECK(segment_speed_variation(r1, m) < 1e-8);
  const auto r2 = resample_constant_speed(r1, m);
  for (int k = 0; k < r1.size(); ++k) {
    CHECK((r1.node(k) - r2.node(k)).norm() < 1e-10);
  }
}

TEST_CASE("embedding: circles pass, crossings are caught") {
  const auto circle = latitude(kPi / 3, 128);
  CHECK(self_intersects(circle).embedded);

  // Gerono lemniscate through the chart: crosses itself at the origin.
  const auto eight = from_plane(128, [](double a) {
    return std::make_pair(std::cos(a), std::sin(a) * std::cos(a));
  });
  const auto report = self_intersects(eight);
  CHECK_FALSE(report.embedded);
  bool crossing = false;
  for (const auto& c : report.contacts) crossing |= c.crossing;
  CHECK(crossing);
}

TEST_CASE("clearance violations without crossings are reported") {
  // clearance above the inter-node spacing: the circle is flagged as a
  // proximity violation but contains no crossing
  const auto circle = latitude(kPi / 2, 64);
  const auto report = self_intersects(circle, 0.12);
  CHECK_FALSE(report.embedded);
  for (const auto& c : report.contacts) CHECK_FALSE(c.crossing);
}

TEST_CASE("aligned distance is an orbit distance") {
  const auto a = latitude(0.9, 96);
  const auto b = latitude(0.9, 96, 2 * kPi * 17 / 96);
  CHECK(aligned_distance(a, b) < 1e-12);
  CHECK(aligned_distance(a, a.reversed()) < 1e-12);
  const auto c = latitude(1.1, 96);
  CHECK(aligned_distance(a, c) > 0.1);
  CHECK_THROWS_AS(aligned_distance(a, latitude(0.9, 64)), std::invalid_argument);
}

TEST_CASE("winding numbers of latitude circles") {
  const auto c = latitude(kPi / 4, 96);
  CHECK(winding_number(c, Vec3::UnitZ()) == 1);
  // relative to the antipodal projection point: the south pole sees the
  // curve with reversed orientation
  CHECK(winding_number(c, -Vec3::UnitZ()) == -1);
  CHECK(winding_number(c, Vec3::UnitX()) == 0);
}

TEST_CASE("enclosed integral matches cap areas on the round sphere") {
  const auto m = ConformalMetric::round();
  for (double r : {kPi / 6, kPi / 4, 1.2}) {
    const auto c = latitude(r, 256);
    const double want = 2 * kPi * (1 - std::cos(r));
    CHECK(std::abs(enclosed_gauss_integral(c, m) - want) < 1e-3);
    CHECK(std::abs(enclosed_gauss_integral_grid(c, m, 256) - want) < 0.1);
  }
}

TEST_CASE("enclosed integral rejects non-embedded curves") {
  const auto m = ConformalMetric::round();
  const auto eight = from_plane(128, [](double a) {
    return std::make_pair(std::cos(a), std::sin(a) * std::cos(a));
  });
  CHECK_THROWS_AS(enclosed_gauss_integral(eight, m), std::domain_error);
}

TEST_CASE("seed circles have the requested curvature") {
  const auto m = ConformalMetric::round();
  for (double kappa : {0.0, 0.5, 2.0}) {
    const auto c = seed_circle(kappa, Vec3(1, 1, 1).normalized(), 256);
    for (double k : geodesic_curvature(c, m)) CHECK(std::abs(k - kappa) < 1e-6);
  }
}
