#include "curvesolve/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace curvesolve {

namespace {

constexpr double kPi = std::numbers::pi;

double great_arc(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

Vec3 slerp(const Vec3& a, const Vec3& b, double f) {
  const double ang = great_arc(a, b);
  if (ang < 1e-14) return a;
  const double s = std::sin(ang);
  Vec3 q = (std::sin((1.0 - f) * ang) / s) * a + (std::sin(f * ang) / s) * b;
  return q.normalized();
}

// Midpoint conformal half-weight e^{t phi / 2} of a segment.
double segment_weight(const ConformalMetric& metric, const Vec3& a, const Vec3& b) {
  if (metric.terms().empty() || metric.t() == 0.0) return 1.0;
  const Vec3 mid = (a + b).normalized();
  return std::exp(0.5 * metric.t() * metric.phi(mid));
}

std::vector<double> segment_lengths(const DiscreteCurve& c, const ConformalMetric& metric) {
  const int n = c.size();
  std::vector<double> m(n);
  for (int k = 0; k < n; ++k) {
    const Vec3& a = c.node(k);
    const Vec3& b = c.at(k + 1);
    m[k] = segment_weight(metric, a, b) * great_arc(a, b);
  }
  return m;
}

// Shortest Euclidean distance between segments [a1,b1] and [a2,b2].
double segment_distance(const Vec3& a1, const Vec3& b1, const Vec3& a2, const Vec3& b2) {
  const Vec3 d1 = b1 - a1, d2 = b2 - a2, r = a1 - a2;
  const double A = d1.squaredNorm(), E = d2.squaredNorm();
  const double B = d1.dot(d2), C = d1.dot(r), F = d2.dot(r);
  double s = 0.0, t = 0.0;
  const double den = A * E - B * B;
  if (den > 1e-14 * A * E) {
    s = std::clamp((B * F - C * E) / den, 0.0, 1.0);
  }
  t = (E > 0.0) ? std::clamp((B * s + F) / E, 0.0, 1.0) : 0.0;
  s = (A > 0.0) ? std::clamp((B * t - C) / A, 0.0, 1.0) : 0.0;
  return (a1 + s * d1 - (a2 + t * d2)).norm();
}

bool on_arc(const Vec3& q, const Vec3& a, const Vec3& b) {
  return great_arc(a, q) + great_arc(q, b) <= great_arc(a, b) + 1e-9;
}

// Proper crossing of two great-arc segments.
bool arcs_cross(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  const Vec3 n1 = a.cross(b), n2 = c.cross(d);
  Vec3 dir = n1.cross(n2);
  const double len = dir.norm();
  if (len < 1e-14) return false;  // coplanar; handled by the distance test
  dir /= len;
  for (const Vec3& q : {dir, Vec3(-dir)}) {
    if (on_arc(q, a, b) && on_arc(q, c, d)) return true;
  }
  return false;
}

}  // namespace

DiscreteCurve::DiscreteCurve(std::vector<Vec3> nodes) : nodes_(std::move(nodes)) {
  const int n = static_cast<int>(nodes_.size());
  if (n < 16) {
    throw std::domain_error("DiscreteCurve: needs at least 16 nodes");
  }
  for (int k = 0; k < n; ++k) {
    if (std::abs(nodes_[k].norm() - 1.0) > 1e-10) {
      throw std::domain_error("DiscreteCurve: node " + std::to_string(k) +
                              " is not on the unit sphere");
    }
    if ((nodes_[(k + 1) % n] - nodes_[k]).norm() == 0.0) {
      throw std::domain_error("DiscreteCurve: coincident consecutive nodes at " +
                              std::to_string(k));
    }
  }
}

const Vec3& DiscreteCurve::at(int k) const {
  const int n = size();
  return nodes_[((k % n) + n) % n];
}

DiscreteCurve DiscreteCurve::shifted(int m) const {
  const int n = size();
  std::vector<Vec3> out(n);
  for (int k = 0; k < n; ++k) out[k] = at(k + m);
  return DiscreteCurve(std::move(out));
}

DiscreteCurve DiscreteCurve::reversed() const {
  std::vector<Vec3> out(nodes_.rbegin(), nodes_.rend());
  return DiscreteCurve(std::move(out));
}

CurveDerivatives derivatives(const DiscreteCurve& curve) {
  const int n = curve.size();
  const double h = 1.0 / n;
  CurveDerivatives d;
  d.velocity.resize(n);
  d.acceleration.resize(n);
  for (int k = 0; k < n; ++k) {
    const Vec3& pm2 = curve.at(k - 2);
    const Vec3& pm1 = curve.at(k - 1);
    const Vec3& p0 = curve.node(k);
    const Vec3& pp1 = curve.at(k + 1);
    const Vec3& pp2 = curve.at(k + 2);
    d.velocity[k] = (8.0 * (pp1 - pm1) - (pp2 - pm2)) / (12.0 * h);
    d.acceleration[k] =
        (-pp2 + 16.0 * pp1 - 30.0 * p0 + 16.0 * pm1 - pm2) / (12.0 * h * h);
  }
  return d;
}

double segment_speed_variation(const DiscreteCurve& curve, const ConformalMetric& metric) {
  const auto m = segment_lengths(curve, metric);
  const auto [lo, hi] = std::minmax_element(m.begin(), m.end());
  const double mean = std::accumulate(m.begin(), m.end(), 0.0) / m.size();
  if (mean <= 0.0) return std::numeric_limits<double>::infinity();
  return (*hi - *lo) / mean;
}

double node_speed_variation(const DiscreteCurve& curve, const ConformalMetric& metric) {
  const auto d = derivatives(curve);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0, sum = 0.0;
  const int n = curve.size();
  for (int k = 0; k < n; ++k) {
    const Vec3& p = curve.node(k);
    const Vec3 vt = d.velocity[k] - d.velocity[k].dot(p) * p;
    const double s = std::sqrt(metric.conformal_factor(p)) * vt.norm();
    lo = std::min(lo, s);
    hi = std::max(hi, s);
    sum += s;
  }
  const double mean = sum / n;
  if (mean <= 0.0) return std::numeric_limits<double>::infinity();
  return (hi - lo) / mean;
}

DiscreteCurve resample_constant_speed(const DiscreteCurve& curve,
                                      const ConformalMetric& metric) {
  const int n = curve.size();
  DiscreteCurve out = curve;
  for (int pass = 0; pass < 60; ++pass) {
    if (segment_speed_variation(out, metric) < 1e-9) break;
    const auto m = segment_lengths(out, metric);
    std::vector<double> cum(n + 1, 0.0);
    for (int k = 0; k < n; ++k) cum[k + 1] = cum[k] + m[k];
    const double total = cum[n];
    if (total < 1e-8) {
      throw std::domain_error("resample_constant_speed: degenerate curve (length " +
                              std::to_string(total) + ")");
    }
    std::vector<Vec3> placed(n);
    int seg = 0;
    for (int j = 0; j < n; ++j) {
      const double s = total * j / n;
      while (seg + 1 < n && cum[seg + 1] <= s) ++seg;
      const double f = (s - cum[seg]) / m[seg];
      placed[j] = slerp(out.node(seg), out.at(seg + 1), f);
    }
    out = DiscreteCurve(std::move(placed));
  }
  return out;
}

std::vector<double> geodesic_curvature(const DiscreteCurve& curve,
                                       const ConformalMetric& metric) {
  const int n = curve.size();
  const auto d = derivatives(curve);
  const double t = metric.t();
  std::vector<double> kappa(n);
  for (int k = 0; k < n; ++k) {
    const Vec3& p = curve.node(k);
    const Vec3 v = d.velocity[k] - d.velocity[k].dot(p) * p;
    const double sp = v.norm();
    if (sp < 1e-12) {
      throw std::domain_error("geodesic_curvature: zero velocity at node " +
                              std::to_string(k));
    }
    const Vec3 a = d.acceleration[k] - d.acceleration[k].dot(p) * p;
    const Vec3 nrm = p.cross(v) / sp;
    const double kcan = a.dot(nrm) / (sp * sp);
    if (metric.terms().empty() || t == 0.0) {
      kappa[k] = kcan;
    } else {
      const double dphin = metric.grad_phi(p).dot(nrm);
      kappa[k] = std::exp(-0.5 * t * metric.phi(p)) * (kcan - 0.5 * t * dphin);
    }
  }
  return kappa;
}

double curve_length(const DiscreteCurve& curve, const ConformalMetric& metric) {
  const int n = curve.size();
  const auto d = derivatives(curve);
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const Vec3& p = curve.node(k);
    const Vec3 v = d.velocity[k] - d.velocity[k].dot(p) * p;
    sum += std::sqrt(metric.conformal_factor(p)) * v.norm();
  }
  return sum / n;
}

EmbeddingReport self_intersects(const DiscreteCurve& curve, double clearance) {
  if (!(clearance > 0.0)) {
    throw std::domain_error("self_intersects: clearance must be positive");
  }
  const int n = curve.size();
  EmbeddingReport report;
  for (int i = 0; i < n; ++i) {
    const Vec3& a1 = curve.node(i);
    const Vec3& b1 = curve.at(i + 1);
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // shares node 0
      const Vec3& a2 = curve.node(j);
      const Vec3& b2 = curve.at(j + 1);
      const double dist = segment_distance(a1, b1, a2, b2);
      const bool crossing = dist < 1e-12 || arcs_cross(a1, b1, a2, b2);
      if (crossing || dist < clearance) {
        report.contacts.push_back({i, j, dist, crossing});
      }
    }
  }
  report.embedded = report.contacts.empty();
  return report;
}

double aligned_distance(const DiscreteCurve& a, const DiscreteCurve& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("aligned_distance: curves must share N (resample first)");
  }
  const int n = a.size();
  double best = std::numeric_limits<double>::infinity();
  for (int orient = 0; orient < 2; ++orient) {
    for (int shift = 0; shift < n; ++shift) {
      double worst = 0.0;
      for (int k = 0; k < n; ++k) {
        const Vec3& q = (orient == 0) ? b.at(k + shift) : b.at(shift - k);
        worst = std::max(worst, (a.node(k) - q).norm());
        if (worst >= best) break;
      }
      best = std::min(best, worst);
    }
  }
  return best;
}

int winding_number(const DiscreteCurve& curve, const Vec3& q) {
  require_unit(q, "winding_number");
  // Orthonormal tangent basis at q.
  Vec3 e1 = q.cross(std::abs(q.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX()).normalized();
  Vec3 e2 = q.cross(e1);
  const int n = curve.size();
  double total = 0.0;
  double prev_x = 0.0, prev_y = 0.0;
  for (int k = 0; k <= n; ++k) {
    const Vec3& p = curve.at(k);
    const double denom = 1.0 + p.dot(q);
    if (std::abs(denom) < 1e-12) {
      throw std::domain_error("winding_number: curve passes through the antipode of q");
    }
    const double x = p.dot(e1) / denom;
    const double y = p.dot(e2) / denom;
    if (k > 0) {
      total += std::atan2(prev_x * y - prev_y * x, prev_x * x + prev_y * y);
    }
    prev_x = x;
    prev_y = y;
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

namespace {

// Round area of the region to the left of the curve: angle excess of the
// inscribed great-arc polygon, 2 pi - sum of signed turning angles.
double left_region_round_area(const DiscreteCurve& curve) {
  const int n = curve.size();
  double turning = 0.0;
  for (int k = 0; k < n; ++k) {
    const Vec3& prev = curve.at(k - 1);
    const Vec3& p = curve.node(k);
    const Vec3& next = curve.at(k + 1);
    const Vec3 tin = (prev.dot(p) * p - prev).normalized();
    const Vec3 tout = (next - p.dot(next) * p).normalized();
    turning += std::atan2(tin.cross(tout).dot(p), tin.dot(tout));
  }
  return 2.0 * kPi - turning;
}

}  // namespace

double enclosed_gauss_integral(const DiscreteCurve& curve,
                               const ConformalMetric& metric,
                               int /*grid_resolution*/) {
  {
    const auto report = self_intersects(curve, 1e-12);
    bool crossing = false;
    for (const auto& c : report.contacts) crossing |= c.crossing;
    if (crossing) {
      throw std::domain_error("enclosed_gauss_integral: curve is not embedded");
    }
  }
  const double area = left_region_round_area(curve);
  if (metric.terms().empty() || metric.t() == 0.0) return area;

  // K dA_{g_t} = (1 - (t/2) Delta phi) dA_can, and the Laplacian term
  // integrates to a boundary flux: the inward normal is n = p x v/|v|,
  // so  int_Omega Delta phi dA = -cint dphi(n) ds.
  const auto d = derivatives(curve);
  const int n = curve.size();
  double flux = 0.0;
  for (int k = 0; k < n; ++k) {
    const Vec3& p = curve.node(k);
    const Vec3 v = d.velocity[k] - d.velocity[k].dot(p) * p;
    const double sp = v.norm();
    if (sp < 1e-12) {
      throw std::domain_error("enclosed_gauss_integral: zero velocity node");
    }
    const Vec3 nrm = p.cross(v) / sp;
    flux += metric.grad_phi(p).dot(nrm) * sp;
  }
  flux /= n;
  return area + 0.5 * metric.t() * flux;
}

double enclosed_gauss_integral_grid(const DiscreteCurve& curve,
                                    const ConformalMetric& metric,
                                    int grid_resolution) {
  const auto grid = sphere_grid(grid_resolution);
  const double cell = 4.0 * kPi / static_cast<double>(grid.size());
  const double t = metric.t();
  double sum = 0.0;
  for (const auto& q : grid) {
    if (winding_number(curve, q) == 1) {
      sum += (1.0 - 0.5 * t * metric.laplace_phi(q)) * cell;
    }
  }
  return sum;
}

}  // namespace curvesolve
