#pragma once

#include <Eigen/Dense>

namespace curvesolve {

// Real spherical harmonics in the orthonormal geodesy convention:
// integral of Y_lm^2 over the unit sphere equals 1, no Condon-Shortley
// phase.  Evaluation goes through the solid-harmonic polynomial form in
// Cartesian coordinates, so values and sphere gradients are closed-form
// (no chart singularities at the poles).
struct HarmonicEval {
  double value;
  Eigen::Vector3d sphere_gradient;  // tangential gradient at p
};

// Value of Y_l^m at a unit vector p.  Throws std::domain_error for
// invalid (l, m) or non-unit p.
double real_sph_harm(int l, int m, const Eigen::Vector3d& p);

// Value plus tangential (Laplace-Beltrami) gradient at p.
HarmonicEval real_sph_harm_grad(int l, int m, const Eigen::Vector3d& p);

// Largest supported degree; coefficients are computed in double
// precision and degrade beyond this.
inline constexpr int kMaxHarmonicDegree = 24;

}  // namespace curvesolve
