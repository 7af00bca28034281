#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "curvesolve/curve.hpp"
#include "curvesolve/metric.hpp"

namespace curvesolve {

// Target curvature: c(p) = offset + harmonic sum, used at strength
// scale * c(p).  Construction validates scale * c >= 0 on a grid.
class CurvatureSpec {
 public:
  CurvatureSpec(double constant, double scale);
  CurvatureSpec(double offset, std::vector<HarmonicTerm> terms, double scale,
                int validation_resolution = 48);

  double offset() const { return offset_; }
  const std::vector<HarmonicTerm>& terms() const { return terms_; }
  double scale() const { return scale_; }

  CurvatureSpec with_scale(double s) const;

  // c(p), without the scale factor.
  double base(const Vec3& p) const;
  // scale * c(p)
  double value(const Vec3& p) const;
  // max of scale * c over the grid
  double max_value(int grid_resolution = 48) const;

  bool operator==(const CurvatureSpec&) const = default;

 private:
  double offset_ = 0.0;
  std::vector<HarmonicTerm> terms_;
  double scale_ = 0.0;
  void validate(int grid_resolution) const;
};

struct SolverOptions {
  double tol = 1e-10;          // on the sup norm of the residual
  int max_iter = 500;
  double damping = 0.5;        // backtracking factor
  bool newton = true;          // Gauss-Newton polish once the residual is small
  double newton_threshold = 1e-3;
  bool embeddedness_monitor = false;
  double clearance = 1e-4;
  double fd_step = 1e-6;       // finite-difference step for the Jacobian
  bool operator==(const SolverOptions&) const = default;
};

enum class SolveStatus { converged, max_iter_exceeded, degenerated, embedding_lost };

struct SolveDiagnostics {
  SolveStatus status = SolveStatus::max_iter_exceeded;
  int iterations = 0;
  double residual_norm = 0.0;   // final sup norm
  double curvature_error = 0.0; // max_k |kappa_g(k) - s c(p_k)|
  std::string message;
};

struct SolveResult {
  DiscreteCurve curve;
  SolveDiagnostics diagnostics;
  bool ok() const { return diagnostics.status == SolveStatus::converged; }
};

// Residual of the prescribed-curvature equation at every node:
//   R = D_{t,g} dgamma - |dgamma|_g  s c(p)  J dgamma,
// with the covariant acceleration in g_t formed from the tangent-projected
// discrete derivatives plus the conformal connection correction.
TangentField residual(const DiscreteCurve& curve, const ConformalMetric& metric,
                      const CurvatureSpec& spec);

// Unique solution X of the cyclic positive-definite system
// (-D_h^2 + I) X = R, solved in parallel-transported tangent frames
// (complex Thomas elimination with a Sherman-Morrison seam correction).
// X = 0 exactly when R = 0.
TangentField sobolev_field(const DiscreteCurve& curve, const TangentField& r);

// 2N x 2N finite-difference Jacobian of the residual in per-node tangent
// frames (e1 = unit velocity, e2 = left normal).
Eigen::MatrixXd jacobian_fd(const DiscreteCurve& curve, const ConformalMetric& metric,
                            const CurvatureSpec& spec, double h_fd = 1e-6);

// Residual of the curve expressed in the same frames, as a 2N vector.
Eigen::VectorXd residual_in_frames(const DiscreteCurve& curve,
                                   const ConformalMetric& metric,
                                   const CurvatureSpec& spec);

// Damped corrector: Sobolev-preconditioned descent with constant-speed
// retraction until the residual is small, then Levenberg-Marquardt on the
// finite-difference Jacobian.  Always returns the last iterate.
SolveResult solve_zero(const DiscreteCurve& initial, const ConformalMetric& metric,
                       const CurvatureSpec& spec, const SolverOptions& opts = {});

// Advisory lower length estimate from Gauss-Bonnet:
// kappa_max L + K_max L^2 / (4 pi) >= 2 pi.
double length_lower_estimate(const ConformalMetric& metric, const CurvatureSpec& spec,
                             int grid_resolution = 32);

double sup_norm(const TangentField& f);

}  // namespace curvesolve
