#include "curvesolve/verify.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace curvesolve {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
}

bool Diagnostics::all_ok(double tol) const {
  if (!embedded) return false;
  if (!(min_gauss_curvature > 0.0)) return false;
  if (!(length <= length_bound + tol)) return false;
  if (!notes.empty()) return false;
  return true;
}

double first_eigenvalue(double length) {
  if (!(length > 0.0)) {
    throw std::domain_error("first_eigenvalue: length must be positive");
  }
  const double q = 2.0 * kPi / length;
  return q * q;
}

LengthBoundCheck check_length_bound(const DiscreteCurve& curve,
                                    const ConformalMetric& metric,
                                    int grid_resolution) {
  LengthBoundCheck out;
  out.length = curve_length(curve, metric);
  const double min_k = metric.min_gauss_curvature(grid_resolution);
  out.bound = (min_k > 0.0) ? 2.0 * kPi * std::numbers::sqrt2 / std::sqrt(min_k)
                            : std::numeric_limits<double>::infinity();

  const auto kappa = geodesic_curvature(curve, metric);
  for (double k : kappa) {
    if (k < -1e-6) {
      out.note = "negative geodesic curvature (" + std::to_string(k) + ")";
      break;
    }
  }
  if (out.note.empty() && !self_intersects(curve).embedded) {
    out.note = "curve is not embedded";
  }
  out.ok = out.length <= out.bound + 1e-8;
  return out;
}

ReillyCheck check_reilly_corollary(const DiscreteCurve& curve,
                                   const ConformalMetric& metric,
                                   int grid_resolution) {
  ReillyCheck out;
  const double length = curve_length(curve, metric);
  out.two_lambda1 = 2.0 * first_eigenvalue(length);
  out.min_k = metric.min_gauss_curvature(grid_resolution);
  const auto kappa = geodesic_curvature(curve, metric);
  for (double k : kappa) {
    if (k < -1e-6) {
      out.note = "negative geodesic curvature (" + std::to_string(k) + ")";
      break;
    }
  }
  out.ok = out.min_k <= out.two_lambda1 + 1e-8;
  return out;
}

double check_gauss_bonnet(const DiscreteCurve& curve, const ConformalMetric& metric,
                          int grid_resolution) {
  const auto kappa = geodesic_curvature(curve, metric);
  const auto d = derivatives(curve);
  const int n = curve.size();
  double kds = 0.0;
  for (int k = 0; k < n; ++k) {
    const Vec3& p = curve.node(k);
    const Vec3 v = d.velocity[k] - d.velocity[k].dot(p) * p;
    kds += kappa[k] * std::sqrt(metric.conformal_factor(p)) * v.norm();
  }
  kds /= n;
  const double area = enclosed_gauss_integral(curve, metric, grid_resolution);
  return std::abs(kds + area - 2.0 * kPi);
}

Diagnostics certify(const DiscreteCurve& curve, const ConformalMetric& metric,
                    const CurvatureSpec& spec, int grid_resolution,
                    double clearance) {
  Diagnostics diag;
  diag.length = curve_length(curve, metric);
  diag.lambda1 = first_eigenvalue(diag.length);
  diag.min_gauss_curvature = metric.min_gauss_curvature(grid_resolution);
  diag.length_bound = (diag.min_gauss_curvature > 0.0)
                          ? 2.0 * kPi * std::numbers::sqrt2 /
                                std::sqrt(diag.min_gauss_curvature)
                          : std::numeric_limits<double>::infinity();
  diag.embedded = self_intersects(curve, clearance).embedded;
  diag.speed_variation = segment_speed_variation(curve, metric);

  try {
    const auto kappa = geodesic_curvature(curve, metric);
    double err = 0.0;
    for (int k = 0; k < curve.size(); ++k) {
      err = std::max(err, std::abs(kappa[k] - spec.value(curve.node(k))));
    }
    diag.max_curvature_error = err;
  } catch (const std::domain_error& e) {
    diag.max_curvature_error = kNan;
    diag.notes.push_back(std::string("curvature: ") + e.what());
  }

  if (diag.embedded) {
    try {
      diag.gauss_bonnet_residual = check_gauss_bonnet(curve, metric, 2 * grid_resolution);
    } catch (const std::domain_error& e) {
      diag.gauss_bonnet_residual = kNan;
      diag.notes.push_back(std::string("gauss-bonnet: ") + e.what());
    }
  } else {
    diag.gauss_bonnet_residual = kNan;  // region-dependent check not applicable
  }

  if (!(diag.min_gauss_curvature > 0.0)) {
    diag.notes.push_back("convexity: grid min K is not positive");
  }
  if (diag.length > diag.length_bound + 1e-8) {
    diag.notes.push_back("length bound exceeded");
  }
  return diag;
}

}  // namespace curvesolve
