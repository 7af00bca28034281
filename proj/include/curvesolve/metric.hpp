#pragma once

#include <Eigen/Dense>
#include <vector>

namespace curvesolve {

using Vec3 = Eigen::Vector3d;

struct HarmonicTerm {
  int l = 0;
  int m = 0;
  double coeff = 0.0;
  bool operator==(const HarmonicTerm&) const = default;
};

// Conformal family g_t = e^{t phi} g_can on S^2, with phi a finite real
// spherical-harmonic sum.  The Laplacian of phi is analytic through the
// eigenvalue identity, so the Gauss curvature of g_t is closed-form.
//
// Construction validates strict convexity (min Gauss curvature over a
// validation grid and over t in {0, 1/20, ..., 1} must be positive) and
// throws std::domain_error otherwise.
class ConformalMetric {
 public:
  ConformalMetric(std::vector<HarmonicTerm> terms, double t,
                  int validation_resolution = 48);

  // Round sphere (phi = 0).
  static ConformalMetric round();

  // Same conformal family at a different homotopy parameter.  The family
  // was validated over the whole t range at construction, so this does
  // not re-run the convexity gate.
  ConformalMetric with_t(double t) const;

  double t() const { return t_; }
  const std::vector<HarmonicTerm>& terms() const { return terms_; }

  // phi(p) = sum coeff * Y_l^m(p)
  double phi(const Vec3& p) const;
  // Round-sphere Laplacian of phi via  Delta Y_l^m = -l(l+1) Y_l^m.
  double laplace_phi(const Vec3& p) const;
  // Tangential gradient of phi at p.
  Vec3 grad_phi(const Vec3& p) const;

  // Gauss curvature of g_t:  e^{-t phi} (1 - (t/2) Delta_can phi).
  double gauss_curvature(const Vec3& p) const;

  // e^{t phi(p)}
  double conformal_factor(const Vec3& p) const;

  // |v|_{g_t} = e^{t phi(p)/2} |v| for v tangent at p.
  double speed(const Vec3& p, const Vec3& v) const;

  // Minimum of gauss_curvature over an equal-area grid at this t.
  double min_gauss_curvature(int grid_resolution) const;

  // Minimum over the same grid and over t in {0, 1/20, ..., 1}.
  double family_min_curvature(int grid_resolution) const;

  bool operator==(const ConformalMetric&) const = default;

 private:
  ConformalMetric() = default;
  std::vector<HarmonicTerm> terms_;
  double t_ = 0.0;
};

// Positively oriented quarter-turn of a tangent vector:  J v = p x v.
// Conformal rescaling preserves angles, so this is the rotation by pi/2
// for every metric in the family.  Throws if v is not tangent at p.
Vec3 rotate90(const Vec3& p, const Vec3& v);

// Equal-area sphere sampling: `resolution` bands uniform in z, twice as
// many azimuthal columns, cell centers.  Every cell has round area
// 4 pi / (2 resolution^2).
std::vector<Vec3> sphere_grid(int resolution);

void require_unit(const Vec3& p, const char* who);
void require_tangent(const Vec3& p, const Vec3& v, const char* who);

}  // namespace curvesolve
