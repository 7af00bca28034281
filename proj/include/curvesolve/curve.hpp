#pragma once

#include <vector>

#include "curvesolve/metric.hpp"

namespace curvesolve {

// Closed discrete curve: N cyclically ordered unit vectors, node k at
// parameter theta_k = k/N on S^1 = R/Z.
class DiscreteCurve {
 public:
  explicit DiscreteCurve(std::vector<Vec3> nodes);

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<Vec3>& nodes() const { return nodes_; }
  const Vec3& node(int k) const { return nodes_[k]; }
  // Cyclic access, any integer index.
  const Vec3& at(int k) const;

  DiscreteCurve shifted(int m) const;
  DiscreteCurve reversed() const;

 private:
  std::vector<Vec3> nodes_;
};

using TangentField = std::vector<Vec3>;

struct CurveDerivatives {
  TangentField velocity;      // dgamma/dtheta, ambient
  TangentField acceleration;  // d^2 gamma/dtheta^2, ambient
};

// Cyclic central differences on the uniform parameter grid (5-point,
// fourth order), step h = 1/N.  Raw ambient values; tangent projection
// happens where covariant quantities are formed.
CurveDerivatives derivatives(const DiscreteCurve& curve);

// Nodes re-placed at N equal g_t-arclength stations (arc-length table
// from e^{t phi/2}-weighted great-arc segment lengths, great-arc
// interpolation, iterated to the stated tolerance).
DiscreteCurve resample_constant_speed(const DiscreteCurve& curve,
                                      const ConformalMetric& metric);

// Spread of the per-segment discrete g_t-speeds, (max-min)/mean.  This is
// the quantity resample_constant_speed drives below 1e-9.
double segment_speed_variation(const DiscreteCurve& curve,
                               const ConformalMetric& metric);

// Spread of the g_t-speeds of the difference-quotient velocities.  At a
// solver zero this vanishes to residual precision; it is the measure the
// continuation monitors use.
double node_speed_variation(const DiscreteCurve& curve,
                            const ConformalMetric& metric);

// Signed geodesic curvature of the curve with respect to g_t at every
// node.  Positive curvature bends toward the left-hand side of the
// velocity (normal n = p x v / |v|).
std::vector<double> geodesic_curvature(const DiscreteCurve& curve,
                                       const ConformalMetric& metric);

// g_t-length via the trapezoidal rule in the curve parameter; for smooth
// closed curves the error is dominated by the difference-stencil error.
double curve_length(const DiscreteCurve& curve, const ConformalMetric& metric);

struct SegmentContact {
  int seg_a = 0;
  int seg_b = 0;
  double distance = 0.0;
  bool crossing = false;
};

struct EmbeddingReport {
  bool embedded = true;
  std::vector<SegmentContact> contacts;
};

// Pairwise test of all non-adjacent great-arc segments for crossings or
// clearance violations.  Segments sharing a node are skipped.
EmbeddingReport self_intersects(const DiscreteCurve& curve,
                                double clearance = 1e-4);

// Discrete S^1-orbit distance: min over all cyclic shifts and both
// traversal orientations of the max node-to-node Euclidean distance.
// Curves must share N.
double aligned_distance(const DiscreteCurve& a, const DiscreteCurve& b);

// Winding number of the curve around q (stereographic projection from
// the antipode of q).
int winding_number(const DiscreteCurve& curve, const Vec3& q);

// Integral of K_{g_t} dA_{g_t} over the disc to the left of the curve.
// Computed as the round area of the left-hand region (angle excess of
// the great-arc polygon) plus the conformal correction, which reduces to
// a boundary flux of phi by the divergence theorem:
//   area_can(Omega) + (t/2) * cint dphi(n) ds_can .
// Throws if the curve is not embedded.
double enclosed_gauss_integral(const DiscreteCurve& curve,
                               const ConformalMetric& metric,
                               int grid_resolution = 128);

// Same integral by brute force: sum of (1 - (t/2) Delta phi) * cell area
// over grid cells whose centers have winding number 1.  First-order in
// the grid; kept as an independent cross-check.
double enclosed_gauss_integral_grid(const DiscreteCurve& curve,
                                    const ConformalMetric& metric,
                                    int grid_resolution);

}  // namespace curvesolve
