#include "curvesolve/solver.hpp"

#include <Eigen/Sparse>

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <numbers>
#include <stdexcept>

#include "curvesolve/harmonics.hpp"

namespace curvesolve {

namespace {

constexpr double kPi = std::numbers::pi;
using Complex = std::complex<double>;

struct NodeKinematics {
  Vec3 p;
  Vec3 v;      // tangent-projected velocity
  Vec3 a;      // tangent-projected acceleration
  double speed;
};

std::vector<NodeKinematics> kinematics(const DiscreteCurve& curve) {
  const auto d = derivatives(curve);
  const int n = curve.size();
  std::vector<NodeKinematics> out(n);
  for (int k = 0; k < n; ++k) {
    const Vec3& p = curve.node(k);
    const Vec3 v = d.velocity[k] - d.velocity[k].dot(p) * p;
    const double sp = v.norm();
    if (sp < 1e-12) {
      throw std::domain_error("residual: zero velocity at node " + std::to_string(k));
    }
    out[k] = {p, v, d.acceleration[k] - d.acceleration[k].dot(p) * p, sp};
  }
  return out;
}

// Parallel transport of a tangent vector w from p to q along the great arc.
Vec3 transport(const Vec3& p, const Vec3& q, const Vec3& w) {
  const double d = 1.0 + p.dot(q);
  return w - (q.dot(w) / d) * (p + q);
}

// Thomas elimination for a complex tridiagonal system with constant
// off-diagonal `off` and per-row diagonal `diag`.
std::vector<Complex> tridiag_solve(const std::vector<double>& diag, double off,
                                   std::vector<Complex> rhs) {
  const int n = static_cast<int>(rhs.size());
  std::vector<double> d(n);
  d[0] = diag[0];
  for (int i = 1; i < n; ++i) {
    const double w = off / d[i - 1];
    d[i] = diag[i] - w * off;
    rhs[i] -= w * rhs[i - 1];
  }
  rhs[n - 1] /= d[n - 1];
  for (int i = n - 2; i >= 0; --i) {
    rhs[i] = (rhs[i] - off * rhs[i + 1]) / d[i];
  }
  return rhs;
}

// Residual at a single node of a raw node array (cyclic 5-point stencils);
// must mirror residual() exactly.
Vec3 residual_at(const std::vector<Vec3>& nodes, int k, const ConformalMetric& metric,
                 const CurvatureSpec& spec) {
  const int n = static_cast<int>(nodes.size());
  const double h = 1.0 / n;
  auto at = [&](int i) -> const Vec3& { return nodes[((i % n) + n) % n]; };
  const Vec3& p = at(k);
  const Vec3& pm2 = at(k - 2);
  const Vec3& pm1 = at(k - 1);
  const Vec3& pp1 = at(k + 1);
  const Vec3& pp2 = at(k + 2);
  const Vec3 vel = (8.0 * (pp1 - pm1) - (pp2 - pm2)) / (12.0 * h);
  const Vec3 acc = (-pp2 + 16.0 * pp1 - 30.0 * p + 16.0 * pm1 - pm2) / (12.0 * h * h);
  const Vec3 v = vel - vel.dot(p) * p;
  const double sp = v.norm();
  if (sp < 1e-12) {
    throw std::domain_error("residual: zero velocity at node " + std::to_string(k));
  }
  Vec3 cov = acc - acc.dot(p) * p;
  const double t = metric.t();
  double half_weight = 1.0;
  if (!(metric.terms().empty() || t == 0.0)) {
    const Vec3 g = metric.grad_phi(p);
    cov += t * (g.dot(v) * v - 0.5 * sp * sp * g);
    half_weight = std::exp(0.5 * t * metric.phi(p));
  }
  const double c = spec.value(p);
  return cov - half_weight * sp * c * p.cross(v);
}

}  // namespace

CurvatureSpec::CurvatureSpec(double constant, double scale)
    : offset_(constant), scale_(scale) {
  validate(48);
}

CurvatureSpec::CurvatureSpec(double offset, std::vector<HarmonicTerm> terms,
                             double scale, int validation_resolution)
    : offset_(offset), terms_(std::move(terms)), scale_(scale) {
  validate(validation_resolution);
}

void CurvatureSpec::validate(int grid_resolution) const {
  if (scale_ < 0.0) {
    throw std::domain_error("CurvatureSpec: scale must be nonnegative");
  }
  if (terms_.empty()) {
    if (scale_ * offset_ < 0.0) {
      throw std::domain_error("CurvatureSpec: effective curvature is negative");
    }
    return;
  }
  for (const auto& p : sphere_grid(grid_resolution)) {
    if (scale_ * base(p) < 0.0) {
      throw std::domain_error(
          "CurvatureSpec: effective curvature is negative on the validation grid");
    }
  }
}

CurvatureSpec CurvatureSpec::with_scale(double s) const {
  CurvatureSpec out = *this;
  out.scale_ = s;
  if (s < 0.0) throw std::domain_error("CurvatureSpec: scale must be nonnegative");
  return out;
}

double CurvatureSpec::base(const Vec3& p) const {
  double c = offset_;
  for (const auto& term : terms_) {
    c += term.coeff * real_sph_harm(term.l, term.m, p);
  }
  return c;
}

double CurvatureSpec::value(const Vec3& p) const { return scale_ * base(p); }

double CurvatureSpec::max_value(int grid_resolution) const {
  if (terms_.empty()) return scale_ * offset_;
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& p : sphere_grid(grid_resolution)) {
    m = std::max(m, value(p));
  }
  return m;
}

TangentField residual(const DiscreteCurve& curve, const ConformalMetric& metric,
                      const CurvatureSpec& spec) {
  const auto kin = kinematics(curve);
  const double t = metric.t();
  const bool flat = metric.terms().empty() || t == 0.0;
  TangentField out(kin.size());
  for (size_t k = 0; k < kin.size(); ++k) {
    const auto& nk = kin[k];
    Vec3 cov = nk.a;
    double half_weight = 1.0;
    if (!flat) {
      const Vec3 g = metric.grad_phi(nk.p);
      cov += t * (g.dot(nk.v) * nk.v - 0.5 * nk.speed * nk.speed * g);
      half_weight = std::exp(0.5 * t * metric.phi(nk.p));
    }
    const double c = spec.value(nk.p);
    out[k] = cov - half_weight * nk.speed * c * nk.p.cross(nk.v);
  }
  return out;
}

TangentField sobolev_field(const DiscreteCurve& curve, const TangentField& r) {
  const int n = curve.size();
  if (static_cast<int>(r.size()) != n) {
    throw std::invalid_argument("sobolev_field: field size mismatch");
  }
  const double h = 1.0 / n;
  const double off = -1.0 / (h * h);
  const double diag = 2.0 / (h * h) + 1.0;

  // Parallel-transported orthonormal tangent frames.
  std::vector<Vec3> e1(n), e2(n);
  const Vec3& p0 = curve.node(0);
  const Vec3 ref = std::abs(p0.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX();
  e1[0] = p0.cross(ref).normalized();
  e2[0] = p0.cross(e1[0]);
  for (int k = 1; k < n; ++k) {
    const Vec3& p = curve.node(k);
    Vec3 w = transport(curve.node(k - 1), p, e1[k - 1]);
    w -= w.dot(p) * p;
    e1[k] = w.normalized();
    e2[k] = p.cross(e1[k]);
  }
  // Holonomy across the seam: transported frame N-1 versus frame 0.
  const Vec3 w = transport(curve.node(n - 1), p0, e1[n - 1]);
  Complex tau(w.dot(e1[0]), w.dot(e2[0]));
  tau /= std::abs(tau);

  std::vector<Complex> rhs(n);
  for (int k = 0; k < n; ++k) {
    const Vec3& p = curve.node(k);
    require_tangent(p, r[k], "sobolev_field");
    rhs[k] = Complex(r[k].dot(e1[k]), r[k].dot(e2[k]));
  }

  // Cyclic system with seam coupling A[0][n-1] = off * tau,
  // A[n-1][0] = off * conj(tau).  Rank-one split A = T + u w^T with
  // u = (alpha, 0, .., beta_bar), w = (1, 0, .., beta/alpha),
  // alpha = 1/h^2, beta = off * tau.
  const double alpha = 1.0 / (h * h);
  const Complex beta = off * tau;
  std::vector<double> tdiag(n, diag);
  tdiag[0] = diag - alpha;
  tdiag[n - 1] = diag - std::norm(beta) / alpha;

  std::vector<Complex> u(n, Complex(0.0, 0.0));
  u[0] = alpha;
  u[n - 1] = std::conj(beta);

  auto y = tridiag_solve(tdiag, off, rhs);
  auto z = tridiag_solve(tdiag, off, u);

  const Complex w0 = 1.0;
  const Complex wn = beta / alpha;
  const Complex num = w0 * y[0] + wn * y[n - 1];
  const Complex den = 1.0 + w0 * z[0] + wn * z[n - 1];
  const Complex factor = num / den;

  TangentField out(n);
  for (int k = 0; k < n; ++k) {
    const Complex xk = y[k] - factor * z[k];
    out[k] = xk.real() * e1[k] + xk.imag() * e2[k];
  }
  return out;
}

Eigen::VectorXd residual_in_frames(const DiscreteCurve& curve,
                                   const ConformalMetric& metric,
                                   const CurvatureSpec& spec) {
  const auto kin = kinematics(curve);
  const auto r = residual(curve, metric, spec);
  const int n = curve.size();
  Eigen::VectorXd out(2 * n);
  for (int k = 0; k < n; ++k) {
    const Vec3 e1 = kin[k].v / kin[k].speed;
    const Vec3 e2 = kin[k].p.cross(e1);
    out[2 * k] = r[k].dot(e1);
    out[2 * k + 1] = r[k].dot(e2);
  }
  return out;
}

Eigen::MatrixXd jacobian_fd(const DiscreteCurve& curve, const ConformalMetric& metric,
                            const CurvatureSpec& spec, double h_fd) {
  if (h_fd < 1e-8 || h_fd > 1e-4) {
    throw std::domain_error("jacobian_fd: step must lie in [1e-8, 1e-4]");
  }
  const int n = curve.size();
  const auto kin = kinematics(curve);
  std::vector<Vec3> f1(n), f2(n);
  for (int k = 0; k < n; ++k) {
    f1[k] = kin[k].v / kin[k].speed;
    f2[k] = kin[k].p.cross(f1[k]);
  }

  // Residual rows always projected onto the frames of the base curve.
  // Perturbing node j only changes the residual inside the stencil
  // footprint (nodes j-2..j+2), so only those rows of the column are
  // nonzero; all other rows cancel exactly in the central difference.
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  std::vector<Vec3> nodes = curve.nodes();
  Vec3 rp[5], rm[5];
  for (int j = 0; j < n; ++j) {
    for (int axis = 0; axis < 2; ++axis) {
      const Vec3& dir = (axis == 0) ? f1[j] : f2[j];
      const Vec3 saved = nodes[j];
      nodes[j] = (saved + h_fd * dir).normalized();
      for (int d = -2; d <= 2; ++d) rp[d + 2] = residual_at(nodes, j + d, metric, spec);
      nodes[j] = (saved - h_fd * dir).normalized();
      for (int d = -2; d <= 2; ++d) rm[d + 2] = residual_at(nodes, j + d, metric, spec);
      nodes[j] = saved;
      const int col = 2 * j + axis;
      for (int d = -2; d <= 2; ++d) {
        const int k = (j + d + n) % n;
        const Vec3 diff = (rp[d + 2] - rm[d + 2]) / (2.0 * h_fd);
        jac(2 * k, col) = diff.dot(f1[k]);
        jac(2 * k + 1, col) = diff.dot(f2[k]);
      }
    }
  }
  return jac;
}

double sup_norm(const TangentField& f) {
  double m = 0.0;
  for (const auto& v : f) m = std::max(m, v.norm());
  return m;
}

double length_lower_estimate(const ConformalMetric& metric, const CurvatureSpec& spec,
                             int grid_resolution) {
  double kmax = spec.max_value(grid_resolution);
  double gauss_max = 0.0;
  for (const auto& p : sphere_grid(grid_resolution)) {
    gauss_max = std::max(gauss_max, metric.gauss_curvature(p));
  }
  const double a = gauss_max / (4.0 * kPi);
  return (-kmax + std::sqrt(kmax * kmax + 8.0 * kPi * a)) / (2.0 * a);
}

namespace {

double max_curvature_error(const DiscreteCurve& curve, const ConformalMetric& metric,
                           const CurvatureSpec& spec) {
  const auto kappa = geodesic_curvature(curve, metric);
  double err = 0.0;
  for (int k = 0; k < curve.size(); ++k) {
    err = std::max(err, std::abs(kappa[k] - spec.value(curve.node(k))));
  }
  return err;
}

// Apply a frame-coordinate step to the nodes and renormalize.
DiscreteCurve apply_step(const DiscreteCurve& curve, const std::vector<Vec3>& f1,
                         const std::vector<Vec3>& f2, const Eigen::VectorXd& d,
                         double alpha) {
  const int n = curve.size();
  std::vector<Vec3> nodes(n);
  for (int k = 0; k < n; ++k) {
    nodes[k] =
        (curve.node(k) - alpha * (d[2 * k] * f1[k] + d[2 * k + 1] * f2[k])).normalized();
  }
  return DiscreteCurve(std::move(nodes));
}

}  // namespace

SolveResult solve_zero(const DiscreteCurve& initial, const ConformalMetric& metric,
                       const CurvatureSpec& spec, const SolverOptions& opts) {
  const double min_length = 0.1 * length_lower_estimate(metric, spec);

  DiscreteCurve curve = resample_constant_speed(initial, metric);
  SolveDiagnostics diag;
  int iter = 0;

  auto finish = [&](SolveStatus status, const std::string& msg) {
    diag.status = status;
    diag.iterations = iter;
    diag.residual_norm = sup_norm(residual(curve, metric, spec));
    diag.curvature_error = max_curvature_error(curve, metric, spec);
    diag.message = msg;
    return SolveResult{curve, diag};
  };

  struct GuardHit {
    SolveStatus status;
    const char* why;
  };
  auto guard = [&]() -> std::optional<GuardHit> {
    if (curve_length(curve, metric) < min_length) {
      return GuardHit{SolveStatus::degenerated, "curve length collapsed"};
    }
    if (opts.embeddedness_monitor && !self_intersects(curve, opts.clearance).embedded) {
      return GuardHit{SolveStatus::embedding_lost, "embeddedness lost"};
    }
    return std::nullopt;
  };

  double rnorm = sup_norm(residual(curve, metric, spec));
  bool descent_exhausted = false;

  // Phase 1: Sobolev-preconditioned descent with constant-speed retraction.
  while (iter < opts.max_iter && rnorm >= opts.tol &&
         !(opts.newton && (rnorm < opts.newton_threshold || descent_exhausted))) {
    const auto r = residual(curve, metric, spec);
    const auto x = sobolev_field(curve, r);
    bool accepted = false;
    for (double alpha = 1.0; alpha >= 1e-6; alpha *= opts.damping) {
      std::vector<Vec3> nodes(curve.size());
      for (int k = 0; k < curve.size(); ++k) {
        nodes[k] = (curve.node(k) - alpha * x[k]).normalized();
      }
      DiscreteCurve trial(std::move(nodes));
      try {
        trial = resample_constant_speed(trial, metric);
      } catch (const std::domain_error&) {
        continue;  // degenerate trial step, shorten
      }
      const double trial_norm = sup_norm(residual(trial, metric, spec));
      if (trial_norm < rnorm) {
        curve = std::move(trial);
        rnorm = trial_norm;
        accepted = true;
        break;
      }
    }
    ++iter;
    // The embeddedness guard is comparatively expensive; during the cheap
    // descent iterations an every-8th cadence is enough (the converged
    // result is guarded again below).
    if (iter % 8 == 0) {
      if (const auto hit = guard()) return finish(hit->status, hit->why);
    }
    if (!accepted) {
      if (!opts.newton) {
        return finish(SolveStatus::max_iter_exceeded, "line search stalled");
      }
      descent_exhausted = true;
    }
  }

  // Phase 2: Levenberg-Marquardt on the finite-difference Jacobian.
  if (opts.newton && rnorm >= opts.tol) {
    double mu = 1e-4;
    while (iter < opts.max_iter && rnorm >= opts.tol) {
      const auto kin_frames = [&]() {
        const auto d = derivatives(curve);
        std::vector<Vec3> f1(curve.size()), f2(curve.size());
        for (int k = 0; k < curve.size(); ++k) {
          const Vec3& p = curve.node(k);
          Vec3 v = d.velocity[k] - d.velocity[k].dot(p) * p;
          f1[k] = v.normalized();
          f2[k] = p.cross(f1[k]);
        }
        return std::pair(f1, f2);
      }();
      const auto& [f1, f2] = kin_frames;

      // The Jacobian is banded (5-node stencil footprint): go through
      // sparse normal equations instead of dense ones.
      const Eigen::SparseMatrix<double> jac =
          jacobian_fd(curve, metric, spec, opts.fd_step).sparseView();
      const Eigen::VectorXd rhs = residual_in_frames(curve, metric, spec);
      const Eigen::SparseMatrix<double> jtj =
          Eigen::SparseMatrix<double>(jac.transpose()) * jac;
      const Eigen::VectorXd jtr = jac.transpose() * rhs;
      const double scale = jtj.diagonal().maxCoeff();
      Eigen::SparseMatrix<double> ident(jtj.rows(), jtj.cols());
      ident.setIdentity();

      bool accepted = false;
      for (int tries = 0; tries < 12 && !accepted; ++tries) {
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(jtj +
                                                                (mu * scale) * ident);
        if (ldlt.info() != Eigen::Success) {
          mu *= 10.0;
          continue;
        }
        const Eigen::VectorXd step = ldlt.solve(jtr);
        const DiscreteCurve trial = apply_step(curve, f1, f2, step, 1.0);
        double trial_norm;
        try {
          trial_norm = sup_norm(residual(trial, metric, spec));
        } catch (const std::domain_error&) {
          mu *= 10.0;
          continue;
        }
        if (trial_norm < rnorm) {
          curve = trial;
          rnorm = trial_norm;
          mu = std::max(mu * 0.25, 1e-14);
          accepted = true;
        } else {
          mu *= 10.0;
        }
      }
      ++iter;
      if (const auto hit = guard()) return finish(hit->status, hit->why);
      if (!accepted) {
        return finish(SolveStatus::max_iter_exceeded, "corrector stalled");
      }
    }
  }

  if (rnorm < opts.tol) {
    if (const auto hit = guard()) return finish(hit->status, hit->why);
    return finish(SolveStatus::converged, "");
  }
  return finish(SolveStatus::max_iter_exceeded, "iteration budget exhausted");
}

}  // namespace curvesolve
