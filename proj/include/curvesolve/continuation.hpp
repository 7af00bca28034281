#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvesolve/solver.hpp"
#include "curvesolve/verify.hpp"

namespace curvesolve {

struct Monitors {
  bool length_bound = true;
  bool embeddedness = true;
  bool convexity = true;
  bool speed = true;
  bool operator==(const Monitors&) const = default;
};

// Waypoints over the homotopy rectangle (t, s).  The default schedule
// follows the well-conditioned order: raise s at t = 0 on the round
// sphere first, then raise t at fixed s.
struct ContinuationSchedule {
  std::vector<std::pair<double, double>> path;  // (t, s)
  double min_step = 1e-4;
  Monitors monitors;
  double continuity_threshold = 0.2;
  double clearance = 1e-4;
  int grid_resolution = 64;

  static ContinuationSchedule l_shaped(double s_target, int s_steps = 21,
                                       int t_steps = 41);
};

enum class BranchStatus { complete, step_collapse, monitor_violation };

struct BranchState {
  double t = 0.0;
  double s = 0.0;
  DiscreteCurve curve;
  Diagnostics diagnostics;
};

struct Branch {
  std::vector<BranchState> states;
  std::string seed_id;
  BranchStatus status = BranchStatus::complete;
  std::string message;
  bool complete() const { return status == BranchStatus::complete; }
  const BranchState& terminal() const { return states.back(); }
};

// Uniformly sampled latitude circle of geodesic curvature kappa about
// `axis` (geodesic radius arccot kappa; great circle for kappa = 0).
// Exact solution on the round sphere with constant c = kappa up to
// stencil error.
DiscreteCurve seed_circle(double kappa, const Vec3& axis, int n);

// Predict-correct along the schedule with step halving down to min_step;
// every accepted state is certified and all enabled monitors enforced.
Branch continue_path(const DiscreteCurve& seed, const ConformalMetric& metric,
                     const CurvatureSpec& spec, const ContinuationSchedule& schedule,
                     const SolverOptions& solver_opts = {},
                     std::string seed_id = "seed");

struct TwoBranchResult {
  Branch branch_a;
  Branch branch_b;
  double distinctness = 0.0;  // aligned distance of the terminal curves
  bool success = false;
  bool merged_warning = false;
};

// The two-branch realization of the existence theorem: trace the same
// schedule from two seed circles and compare the terminal orbits.
TwoBranchResult two_branch_run(const ConformalMetric& metric, const CurvatureSpec& spec,
                               const Vec3& axis_a, const Vec3& axis_b,
                               const ContinuationSchedule& schedule,
                               const SolverOptions& solver_opts = {},
                               double separation_threshold = 0.1,
                               int curve_nodes = 256, bool parallel = false);

}  // namespace curvesolve
