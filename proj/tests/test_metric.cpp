#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "curvesolve/metric.hpp"

using namespace curvesolve;

namespace {

const double kPi = std::acos(-1.0);

Vec3 random_unit(std::mt19937& rng) {
  std::normal_distribution<double> g;
  Vec3 v(g(rng), g(rng), g(rng));
  return v.normalized();
}

// Independent curvature oracle in the stereographic chart: on the image
// plane the metric is e^{rho}|dw|^2 with
//   rho(w) = t phi(p(w)) + log(4 / (1 + |w|^2)^2),
// and for any metric e^{rho}|dw|^2 the Gauss curvature is
//   K = -e^{-rho} Delta_flat rho / 2.
// Evaluated by a 5-point finite-difference Laplacian, entirely outside
// the closed-form path under test.
double chart_curvature_fd(const ConformalMetric& metric, double u, double v) {
  auto rho = [&](double a, double b) {
    const double d = 1 + a * a + b * b;
    const Vec3 p(2 * a / d, 2 * b / d, (a * a + b * b - 1) / d);
    return metric.t() * metric.phi(p) + std::log(4.0 / (d * d));
  };
  const double h = 1e-4;
  const double lap = (rho(u + h, v) + rho(u - h, v) + rho(u, v + h) + rho(u, v - h) -
                      4 * rho(u, v)) /
                     (h * h);
  return -0.5 * std::exp(-rho(u, v)) * lap;
}

}  // namespace

TEST_CASE("round sphere has unit curvature everywhere") {
  const auto m = ConformalMetric::round();
  std::mt19937 rng(3);
  for (int i = 0; i < 20; ++i) {
    const Vec3 p = random_unit(rng);
    CHECK(m.phi(p) == 0.0);
    CHECK(m.gauss_curvature(p) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.conformal_factor(p) == 1.0);
  }
}

TEST_CASE("curvature closed form matches the chart oracle") {
  const ConformalMetric family({{2, 0, 0.12}, {3, 2, -0.07}, {5, -4, 0.04}}, 1.0);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> span(-1.2, 1.2);
  for (double t : {0.0, 0.35, 1.0}) {
    const auto m = family.with_t(t);
    for (int i = 0; i < 15; ++i) {
      const double u = span(rng), v = span(rng);
      const double d = 1 + u * u + v * v;
      const Vec3 p(2 * u / d, 2 * v / d, (u * u + v * v - 1) / d);
      CHECK(m.gauss_curvature(p) ==
            doctest::Approx(chart_curvature_fd(m, u, v)).epsilon(2e-6));
    }
  }
}

TEST_CASE("gradient of phi matches finite differences") {
  const ConformalMetric m({{2, 1, 0.2}, {4, -3, 0.1}}, 1.0);
  std::mt19937 rng(9);
  for (int i = 0; i < 15; ++i) {
    const Vec3 p = random_unit(rng);
    Vec3 u = random_unit(rng);
    u = (u - u.dot(p) * p).normalized();
    const double h = 1e-6;
    const double fd = (m.phi(std::cos(h) * p + std::sin(h) * u) -
                       m.phi(std::cos(h) * p - std::sin(h) * u)) /
                      (2 * h);
    CHECK(m.grad_phi(p).dot(u) == doctest::Approx(fd).epsilon(1e-6));
    CHECK(std::abs(m.grad_phi(p).dot(p)) < 1e-10);
  }
}

TEST_CASE("speed and factor are conformal") {
  const ConformalMetric m({{1, 1, 0.3}}, 0.7);
  std::mt19937 rng(21);
  for (int i = 0; i < 10; ++i) {
    const Vec3 p = random_unit(rng);
    Vec3 v = random_unit(rng);
    v = v - v.dot(p) * p;
    CHECK(m.speed(p, v) ==
          doctest::Approx(std::exp(0.7 * m.phi(p) / 2) * v.norm()).epsilon(1e-14));
    CHECK(m.conformal_factor(p) == doctest::Approx(std::exp(0.7 * m.phi(p))).epsilon(1e-14));
  }
}

TEST_CASE("convexity gate rejects non-convex families") {
  // Large low-degree coefficient drives 1 - (t/2) Delta phi negative
  // somewhere on the sphere before t = 1.
  CHECK_THROWS_AS(ConformalMetric({{2, 0, 2.0}}, 1.0), std::domain_error);
  CHECK_NOTHROW(ConformalMetric({{2, 0, 0.1}}, 1.0));
}

TEST_CASE("family minimum is a lower bound for slice minima") {
  const ConformalMetric family({{2, 0, 0.1}, {3, 1, 0.05}}, 1.0);
  const double fam = family.family_min_curvature(32);
  CHECK(fam > 0.0);
  for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    CHECK(family.with_t(t).min_gauss_curvature(32) >= fam - 1e-12);
  }
}

TEST_CASE("rotate90 is a metric-independent quarter turn") {
  std::mt19937 rng(17);
  for (int i = 0; i < 10; ++i) {
    const Vec3 p = random_unit(rng);
    Vec3 v = random_unit(rng);
    v = v - v.dot(p) * p;
    const Vec3 jv = rotate90(p, v);
    CHECK(jv.dot(v) == doctest::Approx(0.0).scale(1).epsilon(1e-12));
    CHECK(jv.dot(p) == doctest::Approx(0.0).scale(1).epsilon(1e-12));
    CHECK(jv.norm() == doctest::Approx(v.norm()).epsilon(1e-12));
    // J^2 = -1
    CHECK((rotate90(p, jv) + v).norm() < 1e-12);
  }
  CHECK_THROWS_AS(rotate90(Vec3(0, 0, 2), Vec3::UnitX()), std::domain_error);
  CHECK_THROWS_AS(rotate90(Vec3::UnitZ(), Vec3::UnitZ()), std::domain_error);
}

TEST_CASE("sphere grid covers the sphere with equal weights") {
  const auto grid = sphere_grid(24);
  CHECK(grid.size() == 2 * 24 * 24);
  double zsum = 0.0;
  for (const auto& p : grid) {
    CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-12));
    zsum += p.z();
  }
  CHECK(std::abs(zsum) < 1e-9);
  // equal-area quadrature integrates a smooth function decently
  double integral = 0.0;
  for (const auto& p : grid) integral += p.z() * p.z();
  integral *= 4 * kPi / grid.size();
  CHECK(integral == doctest::Approx(4 * kPi / 3).epsilon(3e-3));
}
