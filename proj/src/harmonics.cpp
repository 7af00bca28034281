#include "curvesolve/harmonics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace curvesolve {

namespace {

constexpr double kPi = std::numbers::pi;

void check_args(int l, int m, const Eigen::Vector3d& p) {
  if (l < 0 || l > kMaxHarmonicDegree || std::abs(m) > l) {
    throw std::domain_error("real_sph_harm: invalid degree/order (l=" +
                            std::to_string(l) + ", m=" + std::to_string(m) + ")");
  }
  if (std::abs(p.norm() - 1.0) > 1e-12) {
    throw std::domain_error("real_sph_harm: point is not on the unit sphere");
  }
}

// Coefficients of d^m P_l / dt^m as a polynomial in t:
//   P_l(t) = 2^-l sum_k (-1)^k C(l,k) C(2l-2k,l) t^(l-2k),
// differentiated m times term by term.  The solid harmonic of degree l is
// then  r^l Y_l^m = N_lm * A_m(x,y) * sum_k a_k z^(l-2k-m) (r^2)^k,
// where A_m is Re/Im of (x+iy)^|m|.
struct LegendreTerm {
  double a;
  int zpow;  // exponent of z
  int rpow;  // exponent of r^2
};

std::vector<LegendreTerm> legendre_terms(int l, int m) {
  std::vector<LegendreTerm> terms;
  const double scale = std::pow(2.0, -l);
  double binom_lk = 1.0;  // C(l, k)
  for (int k = 0; 2 * k <= l; ++k) {
    const int e = l - 2 * k - m;
    if (e >= 0) {
      // C(2l-2k, l)
      double binom2 = 1.0;
      for (int i = 1; i <= l - 2 * k; ++i) {
        binom2 *= static_cast<double>(2 * l - 2 * k - i + 1) / i;
      }
      // falling factorial (l-2k)(l-2k-1)...(l-2k-m+1) from the m derivatives
      double fall = 1.0;
      for (int i = 0; i < m; ++i) fall *= l - 2 * k - i;
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      terms.push_back({sign * scale * binom_lk * binom2 * fall, e, k});
    }
    binom_lk *= static_cast<double>(l - k) / (k + 1);
  }
  return terms;
}

double normalization(int l, int m) {
  // sqrt((2l+1)/(4 pi) * (l-|m|)!/(l+|m|)!), doubled by sqrt(2) for m != 0
  double ratio = 1.0;
  for (int i = l - m + 1; i <= l + m; ++i) ratio /= i;
  double n = std::sqrt((2 * l + 1) / (4.0 * kPi) * ratio);
  if (m != 0) n *= std::numbers::sqrt2;
  return n;
}

}  // namespace

double real_sph_harm(int l, int m, const Eigen::Vector3d& p) {
  check_args(l, m, p);
  const int mm = std::abs(m);
  const auto terms = legendre_terms(l, mm);
  const double z = p.z();
  double sum = 0.0;
  for (const auto& t : terms) sum += t.a * std::pow(z, t.zpow);
  // A_m = Re (x+iy)^m for m >= 0, Im for m < 0
  double cre = 1.0, cim = 0.0;
  for (int i = 0; i < mm; ++i) {
    const double re = cre * p.x() - cim * p.y();
    cim = cre * p.y() + cim * p.x();
    cre = re;
  }
  const double am = (m >= 0) ? cre : cim;
  return normalization(l, mm) * am * sum;
}

HarmonicEval real_sph_harm_grad(int l, int m, const Eigen::Vector3d& p) {
  check_args(l, m, p);
  const int mm = std::abs(m);
  const auto terms = legendre_terms(l, mm);
  const double x = p.x(), y = p.y(), z = p.z();

  // (x+iy)^(m-1) and (x+iy)^m
  double pre = 1.0, pim = 0.0;  // power m-1
  double cre = 1.0, cim = 0.0;  // power m
  for (int i = 0; i < mm; ++i) {
    pre = cre;
    pim = cim;
    const double re = cre * x - cim * y;
    cim = cre * y + cim * x;
    cre = re;
  }
  const double am = (m >= 0) ? cre : cim;
  // dA_m/dx and dA_m/dy
  double dax = 0.0, day = 0.0;
  if (mm > 0) {
    if (m >= 0) {  // A = Re
      dax = mm * pre;
      day = -mm * pim;
    } else {  // A = Im
      dax = mm * pim;
      day = mm * pre;
    }
  }

  // Polynomial part evaluated at r^2 = 1 together with its z and r^2
  // sensitivities.
  double sum = 0.0, dsum_dz = 0.0, dsum_dr2 = 0.0;
  for (const auto& t : terms) {
    const double zp = std::pow(z, t.zpow);
    sum += t.a * zp;
    if (t.zpow > 0) dsum_dz += t.a * t.zpow * std::pow(z, t.zpow - 1);
    dsum_dr2 += t.a * t.rpow * zp;
  }

  const double n = normalization(l, mm);
  const double value = n * am * sum;

  // Ambient gradient of the degree-l solid harmonic at r = 1.
  Eigen::Vector3d grad;
  grad.x() = n * (dax * sum + am * dsum_dr2 * 2.0 * x);
  grad.y() = n * (day * sum + am * dsum_dr2 * 2.0 * y);
  grad.z() = n * am * (dsum_dz + dsum_dr2 * 2.0 * z);

  // Remove the radial part: d/dr of a degree-l homogeneous function is
  // l * value on the unit sphere.
  grad -= static_cast<double>(l) * value * p;
  return {value, grad};
}

}  // namespace curvesolve
