#include "aggrnet/contour.hpp"

#include <cmath>
#include <functional>

namespace aggrnet {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Safeguarded Newton on a bracketing interval; falls back to bisection when
// the Newton step leaves the bracket.  f must change sign on [lo, hi].
double solve_bracketed(const std::function<double(double)>& f, double lo,
                      double hi) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    // An endpoint may be an exact root up to rounding (e.g. delta = beta0 at
    // phi = 0); accept it rather than failing on the lost sign change.
    const double tol = 1e-9 * (1.0 + std::abs(hi) + std::abs(lo));
    if (std::abs(fhi) <= tol || std::abs(flo) <= tol)
      return std::abs(fhi) <= std::abs(flo) ? hi : lo;
    throw NumericError("scalar solve: no sign change on the bracket");
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double fx = f(x);
    if (std::abs(fx) < 1e-15) return x;
    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    const double h = 1e-7 * (1.0 + std::abs(x));
    const double df = (f(x + h) - f(x - h)) / (2.0 * h);
    double next = df != 0.0 ? x - fx / df : x;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) < 1e-14 * (1.0 + std::abs(x))) return next;
    x = next;
  }
  return x;
}

}  // namespace

ContourPolar::ContourPolar(const KernelParams& kp, ContourKind which,
                           int samples)
    : kp_(which == ContourKind::kM ? kp : kp.transpose()) {
  if (samples < 8) throw ConfigError("contour needs at least 8 samples");
  kp_.validate();

  // Quadratic-in-y coefficients of a(y), b(y), c(y) where
  // Q(x, y) = a(y) x^2 + b(y) x + c(y); exact interpolation at y in {0, +-1}.
  auto coef = [&](int which_coef) {
    auto at = [&](double y) {
      return x_quadratic(kp_, y)[which_coef].real();
    };
    const double c0 = at(0.0), p = at(1.0), m = at(-1.0);
    return std::array<double, 3>{c0, 0.5 * (p - m), 0.5 * (p + m) - c0};
  };
  ah_ = coef(0);
  bh_ = coef(1);
  ch_ = coef(2);

  const BranchPoints bp = branch_points(kp_);
  y1_ = bp.y[0];
  y2_ = bp.y[1];

  const double a2 = quad(ah_, y2_), c2 = quad(ch_, y2_);
  const double a1 = quad(ah_, y1_), c1 = quad(ch_, y1_);
  if (!(c2 / a2 >= 0.0 && c1 / a1 >= 0.0))
    throw NumericError("negative |x|^2 at a branch point: invalid parameters");
  beta0_ = std::sqrt(c2 / a2);
  beta1_ = -std::sqrt(c1 / a1);

  phi_.resize(samples);
  rho_.resize(samples);
  for (int k = 0; k < samples; ++k) {
    phi_[k] = 2.0 * kPi * k / samples;
    rho_[k] = rho_of(phi_[k]);
  }
}

double ContourPolar::zeta_of(double delta) const {
  // The real y with Re x(y) = delta solves the quadratic 2 delta a(y) + b(y)=0
  // (from x + conj(x) = -b/a); pick the root inside [y1, y2].
  const double c0 = 2.0 * delta * ah_[0] + bh_[0];
  const double c1 = 2.0 * delta * ah_[1] + bh_[1];
  const double c2 = 2.0 * delta * ah_[2] + bh_[2];
  auto clamp = [&](double y) {
    return std::min(std::max(y, y1_), y2_);
  };
  if (std::abs(c2) < 1e-300) {
    if (std::abs(c1) < 1e-300)
      throw NumericError("degenerate zeta equation on the contour");
    return clamp(-c0 / c1);
  }
  const double disc = c1 * c1 - 4.0 * c2 * c0;
  const double sq = std::sqrt(std::max(disc, 0.0));
  const double r1 = (-c1 + sq) / (2.0 * c2);
  const double r2 = (-c1 - sq) / (2.0 * c2);
  const double eps = 1e-9;
  if (r1 >= y1_ - eps && r1 <= y2_ + eps) return clamp(r1);
  return clamp(r2);
}

double ContourPolar::m_of(double delta) const {
  const double d = std::min(std::max(delta, beta1_), beta0_);
  const double y = zeta_of(d);
  return quad(ch_, y) / quad(ah_, y);
}

double ContourPolar::rho_of(double phi) const {
  const double c = std::cos(phi);
  if (std::abs(c) < 1e-12) return std::sqrt(std::max(m_of(0.0), 0.0));
  auto f = [&](double d) { return d - c * std::sqrt(std::max(m_of(d), 0.0)); };
  const double lo = c > 0.0 ? 0.0 : beta1_;
  const double hi = c > 0.0 ? beta0_ : 0.0;
  return solve_bracketed(f, lo, hi) / c;
}

}  // namespace aggrnet
