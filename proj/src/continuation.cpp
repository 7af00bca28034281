#include "curvesolve/continuation.hpp"

#include <cmath>
#include <future>
#include <numbers>
#include <stdexcept>

namespace curvesolve {

namespace {
constexpr double kPi = std::numbers::pi;
}

ContinuationSchedule ContinuationSchedule::l_shaped(double s_target, int s_steps,
                                                    int t_steps) {
  if (s_steps < 2 || t_steps < 2) {
    throw std::domain_error("ContinuationSchedule: need at least 2 steps per leg");
  }
  ContinuationSchedule sched;
  for (int i = 0; i < s_steps; ++i) {
    sched.path.emplace_back(0.0, s_target * i / (s_steps - 1));
  }
  for (int i = 1; i < t_steps; ++i) {
    sched.path.emplace_back(static_cast<double>(i) / (t_steps - 1), s_target);
  }
  return sched;
}

DiscreteCurve seed_circle(double kappa, const Vec3& axis, int n) {
  if (n < 16) throw std::domain_error("seed_circle: need at least 16 nodes");
  if (kappa < 0.0) throw std::domain_error("seed_circle: kappa must be nonnegative");
  const Vec3 a = axis.normalized();
  const double r = (kappa == 0.0) ? 0.5 * kPi : std::atan2(1.0, kappa);  // arccot
  const Vec3 ref = std::abs(a.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX();
  const Vec3 e1 = a.cross(ref).normalized();
  const Vec3 e2 = a.cross(e1);
  std::vector<Vec3> nodes(n);
  const double sr = std::sin(r), cr = std::cos(r);
  for (int k = 0; k < n; ++k) {
    const double ang = 2.0 * kPi * k / n;
    nodes[k] = (cr * a + sr * (std::cos(ang) * e1 + std::sin(ang) * e2)).normalized();
  }
  return DiscreteCurve(std::move(nodes));
}

namespace {

struct MonitorVerdict {
  bool ok = true;
  std::string why;
};

MonitorVerdict run_monitors(const BranchState& state, const ConformalMetric& metric,
                            const ContinuationSchedule& sched) {
  const auto& d = state.diagnostics;
  if (sched.monitors.embeddedness && !d.embedded) {
    return {false, "embeddedness monitor failed"};
  }
  if (sched.monitors.convexity && !(d.min_gauss_curvature > 0.0)) {
    return {false, "convexity monitor failed (grid min K <= 0)"};
  }
  if (sched.monitors.length_bound && d.length > d.length_bound + 1e-8) {
    return {false, "length bound monitor failed"};
  }
  if (sched.monitors.speed && !(d.speed_variation < 1e-8)) {
    return {false, "constant-speed monitor failed (variation " +
                       std::to_string(d.speed_variation) + ")"};
  }
  (void)metric;
  return {};
}

}  // namespace

Branch continue_path(const DiscreteCurve& seed, const ConformalMetric& metric,
                     const CurvatureSpec& spec, const ContinuationSchedule& schedule,
                     const SolverOptions& solver_opts, std::string seed_id) {
  if (schedule.path.empty()) {
    throw std::invalid_argument("continue_path: empty schedule");
  }
  if (schedule.path.front().first != 0.0) {
    throw std::invalid_argument("continue_path: schedule must start at t = 0");
  }

  Branch branch;
  branch.seed_id = std::move(seed_id);

  auto solve_at = [&](const DiscreteCurve& guess, double t, double s) {
    return solve_zero(guess, metric.with_t(t), spec.with_scale(s), solver_opts);
  };

  auto accept = [&](SolveResult&& result, double t, double s) -> bool {
    // Store the constant-speed representative of the converged curve: the
    // tangential re-placement is tiny (it does not move the curve as a set)
    // and the per-segment speed invariant then holds by construction.
    result.curve = resample_constant_speed(result.curve, metric.with_t(t));
    const Diagnostics diag =
        certify(result.curve, metric.with_t(t), spec.with_scale(s),
                schedule.grid_resolution, schedule.clearance);
    BranchState state{t, s, std::move(result.curve), diag};
    const auto verdict = run_monitors(state, metric, schedule);
    if (!verdict.ok) {
      branch.status = BranchStatus::monitor_violation;
      branch.message = verdict.why;
      branch.states.push_back(std::move(state));  // forensic state
      return false;
    }
    if (!branch.states.empty()) {
      const double jump = aligned_distance(branch.states.back().curve, state.curve);
      if (jump > schedule.continuity_threshold) {
        branch.status = BranchStatus::monitor_violation;
        branch.message = "branch continuity violated (aligned distance " +
                         std::to_string(jump) + ")";
        branch.states.push_back(std::move(state));
        return false;
      }
    }
    branch.states.push_back(std::move(state));
    return true;
  };

  // Seed must converge at the first waypoint.
  {
    const auto [t0, s0] = schedule.path.front();
    auto result = solve_at(seed, t0, s0);
    if (!result.ok()) {
      throw std::runtime_error("continue_path: seed did not converge at the first "
                               "waypoint: " + result.diagnostics.message);
    }
    if (!accept(std::move(result), t0, s0)) return branch;
  }

  for (size_t leg = 1; leg < schedule.path.size(); ++leg) {
    const auto [t_from, s_from] = schedule.path[leg - 1];
    const auto [t_to, s_to] = schedule.path[leg];
    double frac = 0.0;   // progress within this leg
    double step = 1.0;
    while (frac < 1.0) {
      const double next = std::min(1.0, frac + step);
      const double t = t_from + (t_to - t_from) * next;
      const double s = s_from + (s_to - s_from) * next;

      // Secant predictor from the last two accepted states.
      DiscreteCurve guess = branch.states.back().curve;
      if (branch.states.size() >= 2) {
        const auto& prev = branch.states[branch.states.size() - 2];
        const auto& last = branch.states.back();
        const double d_last = std::hypot(last.t - prev.t, last.s - prev.s);
        const double d_new = std::hypot(t - last.t, s - last.s);
        if (d_last > 0.0 && prev.curve.size() == last.curve.size()) {
          const double f = d_new / d_last;
          std::vector<Vec3> nodes(last.curve.size());
          for (int k = 0; k < last.curve.size(); ++k) {
            nodes[k] =
                (last.curve.node(k) + f * (last.curve.node(k) - prev.curve.node(k)))
                    .normalized();
          }
          guess = DiscreteCurve(std::move(nodes));
        }
      }
      try {
        guess = resample_constant_speed(guess, metric.with_t(t));
      } catch (const std::exception&) {
        // keep the raw predictor; the solver will reject it if degenerate
      }

      auto result = solve_at(guess, t, s);
      if (result.ok()) {
        if (!accept(std::move(result), t, s)) return branch;
        frac = next;
        step = std::min(1.0, step * 2.0);
      } else {
        step *= 0.5;
        const double leg_span = std::hypot(t_to - t_from, s_to - s_from);
        if (step * std::max(leg_span, 1e-12) < schedule.min_step) {
          branch.status = BranchStatus::step_collapse;
          branch.message = "step collapsed below min_step at (t=" + std::to_string(t) +
                           ", s=" + std::to_string(s) +
                           "): " + result.diagnostics.message;
          return branch;
        }
      }
    }
  }

  branch.status = BranchStatus::complete;
  return branch;
}

TwoBranchResult two_branch_run(const ConformalMetric& metric, const CurvatureSpec& spec,
                               const Vec3& axis_a, const Vec3& axis_b,
                               const ContinuationSchedule& schedule,
                               const SolverOptions& solver_opts,
                               double separation_threshold, int curve_nodes,
                               bool parallel) {
  const double s0 = schedule.path.front().second;
  const double kappa0 = spec.with_scale(s0).max_value();

  auto trace = [&](const Vec3& axis, const char* id) {
    const DiscreteCurve seed = seed_circle(kappa0, axis, curve_nodes);
    return continue_path(seed, metric, spec, schedule, solver_opts, id);
  };

  TwoBranchResult out;
  if (parallel) {
    auto fa = std::async(std::launch::async, trace, axis_a, "seed-a");
    auto fb = std::async(std::launch::async, trace, axis_b, "seed-b");
    out.branch_a = fa.get();
    out.branch_b = fb.get();
  } else {
    out.branch_a = trace(axis_a, "seed-a");
    out.branch_b = trace(axis_b, "seed-b");
  }

  if (!out.branch_a.states.empty() && !out.branch_b.states.empty()) {
    out.distinctness = aligned_distance(out.branch_a.terminal().curve,
                                        out.branch_b.terminal().curve);
  }
  const bool both = out.branch_a.complete() && out.branch_b.complete();
  out.merged_warning = both && out.distinctness <= separation_threshold;
  out.success = both && out.distinctness > separation_threshold;
  return out;
}

}  // namespace curvesolve
