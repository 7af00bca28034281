#pragma once

#include <string>
#include <vector>

#include "curvesolve/curve.hpp"
#include "curvesolve/solver.hpp"

namespace curvesolve {

// Per-state certificate aggregating every checkable statement about a
// solution curve.
struct Diagnostics {
  double length = 0.0;                 // g_t units
  double lambda1 = 0.0;                // 4 pi^2 / length^2
  double min_gauss_curvature = 0.0;    // grid min K at this t
  double length_bound = 0.0;           // 2 pi sqrt(2) / sqrt(min K)
  double gauss_bonnet_residual = 0.0;  // NaN when not applicable
  double max_curvature_error = 0.0;    // sup |kappa_g - s c|
  bool embedded = false;
  double speed_variation = 0.0;        // relative per-segment speed spread
  std::vector<std::string> notes;      // inline check failures

  bool all_ok(double tol = 1e-8) const;
};

struct LengthBoundCheck {
  double length = 0.0;
  double bound = 0.0;
  bool ok = false;
  std::string note;
};

// Lemma-style a priori bound  L <= 2 pi sqrt(2) (grid min K)^{-1/2}.
// Precondition (nonnegative curvature, embedded) violations are reported
// in `note`, not thrown.
LengthBoundCheck check_length_bound(const DiscreteCurve& curve,
                                    const ConformalMetric& metric,
                                    int grid_resolution = 64);

// First nontrivial eigenvalue of the boundary circle, 4 pi^2 / L^2.
double first_eigenvalue(double length);

struct ReillyCheck {
  double two_lambda1 = 0.0;
  double min_k = 0.0;
  bool ok = false;
  std::string note;
};

// Corollary of Reilly's identity:  min K <= 2 lambda_1.  Algebraically
// equivalent to the length bound; kept separate for auditability.
ReillyCheck check_reilly_corollary(const DiscreteCurve& curve,
                                   const ConformalMetric& metric,
                                   int grid_resolution = 64);

// |cint kappa_g ds_g + enclosed Gauss integral - 2 pi|
double check_gauss_bonnet(const DiscreteCurve& curve, const ConformalMetric& metric,
                          int grid_resolution = 128);

// Populate every Diagnostics field; individual check failures are
// recorded in `notes` rather than thrown.
Diagnostics certify(const DiscreteCurve& curve, const ConformalMetric& metric,
                    const CurvatureSpec& spec, int grid_resolution = 64,
                    double clearance = 1e-4);

}  // namespace curvesolve
