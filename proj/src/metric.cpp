#include "curvesolve/metric.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "curvesolve/harmonics.hpp"

namespace curvesolve {

namespace {
constexpr double kPi = std::numbers::pi;
}

void require_unit(const Vec3& p, const char* who) {
  if (std::abs(p.norm() - 1.0) > 1e-12) {
    throw std::domain_error(std::string(who) + ": point is not a unit vector");
  }
}

void require_tangent(const Vec3& p, const Vec3& v, const char* who) {
  const double n = v.norm();
  if (std::abs(p.dot(v)) > 1e-8 * std::max(1.0, n)) {
    throw std::domain_error(std::string(who) + ": vector is not tangent at p");
  }
}

ConformalMetric::ConformalMetric(std::vector<HarmonicTerm> terms, double t,
                                 int validation_resolution)
    : terms_(std::move(terms)), t_(t) {
  if (t < 0.0 || t > 1.0) {
    throw std::domain_error("ConformalMetric: t must lie in [0, 1]");
  }
  for (const auto& term : terms_) {
    if (term.l < 0 || term.l > kMaxHarmonicDegree || std::abs(term.m) > term.l) {
      throw std::domain_error("ConformalMetric: invalid harmonic term (l=" +
                              std::to_string(term.l) + ", m=" + std::to_string(term.m) + ")");
    }
  }
  const double k0 = family_min_curvature(validation_resolution);
  if (!(k0 > 0.0)) {
    throw std::domain_error(
        "ConformalMetric: Gauss curvature is not positive over the homotopy "
        "(grid min K = " + std::to_string(k0) + "); convexity gate failed");
  }
}

ConformalMetric ConformalMetric::round() {
  ConformalMetric m;
  return m;
}

ConformalMetric ConformalMetric::with_t(double t) const {
  if (t < 0.0 || t > 1.0) {
    throw std::domain_error("ConformalMetric::with_t: t must lie in [0, 1]");
  }
  ConformalMetric m;
  m.terms_ = terms_;
  m.t_ = t;
  return m;
}

double ConformalMetric::phi(const Vec3& p) const {
  require_unit(p, "ConformalMetric::phi");
  double sum = 0.0;
  for (const auto& term : terms_) {
    sum += term.coeff * real_sph_harm(term.l, term.m, p);
  }
  return sum;
}

double ConformalMetric::laplace_phi(const Vec3& p) const {
  require_unit(p, "ConformalMetric::laplace_phi");
  double sum = 0.0;
  for (const auto& term : terms_) {
    const double eig = -static_cast<double>(term.l) * (term.l + 1);
    sum += term.coeff * eig * real_sph_harm(term.l, term.m, p);
  }
  return sum;
}

Vec3 ConformalMetric::grad_phi(const Vec3& p) const {
  require_unit(p, "ConformalMetric::grad_phi");
  Vec3 g = Vec3::Zero();
  for (const auto& term : terms_) {
    g += term.coeff * real_sph_harm_grad(term.l, term.m, p).sphere_gradient;
  }
  return g;
}

double ConformalMetric::gauss_curvature(const Vec3& p) const {
  require_unit(p, "ConformalMetric::gauss_curvature");
  if (t_ == 0.0 || terms_.empty()) return 1.0;
  return std::exp(-t_ * phi(p)) * (1.0 - 0.5 * t_ * laplace_phi(p));
}

double ConformalMetric::conformal_factor(const Vec3& p) const {
  if (terms_.empty() || t_ == 0.0) return 1.0;
  return std::exp(t_ * phi(p));
}

double ConformalMetric::speed(const Vec3& p, const Vec3& v) const {
  require_tangent(p, v, "ConformalMetric::speed");
  return std::sqrt(conformal_factor(p)) * v.norm();
}

double ConformalMetric::min_gauss_curvature(int grid_resolution) const {
  if (grid_resolution < 16) {
    throw std::domain_error("min_gauss_curvature: grid resolution must be >= 16");
  }
  double k = std::numeric_limits<double>::infinity();
  for (const auto& p : sphere_grid(grid_resolution)) {
    k = std::min(k, gauss_curvature(p));
  }
  return k;
}

double ConformalMetric::family_min_curvature(int grid_resolution) const {
  if (grid_resolution < 16) {
    throw std::domain_error("family_min_curvature: grid resolution must be >= 16");
  }
  double k = std::numeric_limits<double>::infinity();
  const auto grid = sphere_grid(grid_resolution);
  for (int i = 0; i <= 20; ++i) {
    const ConformalMetric mt = with_t(i / 20.0);
    for (const auto& p : grid) {
      k = std::min(k, mt.gauss_curvature(p));
    }
  }
  return k;
}

Vec3 rotate90(const Vec3& p, const Vec3& v) {
  require_unit(p, "rotate90");
  require_tangent(p, v, "rotate90");
  return p.cross(v);
}

std::vector<Vec3> sphere_grid(int resolution) {
  std::vector<Vec3> pts;
  pts.reserve(static_cast<size_t>(resolution) * 2 * resolution);
  for (int i = 0; i < resolution; ++i) {
    const double z = -1.0 + (2.0 * i + 1.0) / resolution;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (int j = 0; j < 2 * resolution; ++j) {
      const double a = 2.0 * kPi * (j + 0.5) / (2 * resolution);
      pts.emplace_back(rho * std::cos(a), rho * std::sin(a), z);
    }
  }
  return pts;
}

}  // namespace curvesolve
