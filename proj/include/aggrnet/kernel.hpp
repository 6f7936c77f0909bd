#pragma once
// Kernel of the fundamental functional equation
//   R(x,y) H(x,y) = A(x,y) H(x,0) + B(x,y) H(0,y) + C(x,y) H(0,0)
// for the two-aggregator queue process (capture case: the joint success
// probability of both aggregators is 0, as the kernel analysis assumes).
//
// R(x,y) = 1 - L(x,y)[1 - a1 ah2 (1 - 1/x) - ah1 a2 (1 - 1/y)], where
// L(x,y) is the bivariate arrival PGF.  All polynomial work is done on
// Q(x,y) := x y R(x,y), a biquadratic whose coefficients are recovered by
// exact interpolation, so no hand-expanded coefficient formulas are needed.

#include <array>
#include <complex>

#include "aggrnet/tables.hpp"

namespace aggrnet {

using Complex = std::complex<double>;

struct KernelParams {
  double a1 = 0.0, a2 = 0.0;    // aggregator transmit probabilities
  double ah1 = 0.0, ah2 = 0.0;  // alpha_hat_k
  double p1 = 0.0, p2 = 0.0;    // p^D_{Rk,{Rk}}: aggregator alone at sink
  double d1 = 0.0, d2 = 0.0;    // d_k = a_k (ah_j - p_k)
  double l1 = 0.0, l2 = 0.0;    // per-aggregator arrival rates
  double L = 0.0;               // joint-arrival constant
  double t1 = 0.0, t2 = 0.0;    // sensor transmit probabilities

  // Swap aggregator roles (used to solve the mirrored problem on contour L).
  KernelParams transpose() const;
  void validate() const;
};

// Two-sensor (one per area) kernel parameters; cfg may be asymmetric in
// t / alpha / geometry but must have m1 = m2 = 1.
KernelParams make_kernel_params(const NetworkConfig& cfg,
                                const SuccessTables& tables);
KernelParams make_kernel_params(const SymmetricParams& p);

// Arrival PGF L(x,y) (bilinear).
Complex arrival_pgf(const KernelParams& kp, Complex x, Complex y);

// R(x,y) itself (the kernel) and Q = x y R.
Complex kernel_eval(const KernelParams& kp, Complex x, Complex y);
Complex kernel_q(const KernelParams& kp, Complex x, Complex y);

// x y * A(x,y), x y * B(x,y), x y * C(x,y): polynomial numerators of the
// right-hand-side coefficient functions.
Complex coeff_a_xy(const KernelParams& kp, Complex x, Complex y);
Complex coeff_b_xy(const KernelParams& kp, Complex x, Complex y);
Complex coeff_c_xy(const KernelParams& kp, Complex x, Complex y);

// Q as a quadratic in y for fixed x: {a(x), b(x), c(x)} with
// Q = a y^2 + b y + c; and the mirrored version in x for fixed y.
std::array<Complex, 3> y_quadratic(const KernelParams& kp, Complex x);
std::array<Complex, 3> x_quadratic(const KernelParams& kp, Complex y);

// Degree-4 discriminant polynomials D_x, D_y, low-order-first coefficients.
std::array<double, 5> discriminant_x(const KernelParams& kp);
std::array<double, 5> discriminant_y(const KernelParams& kp);

struct BranchPoints {
  std::array<double, 4> x{};  // 0 < x1 < x2 <= 1 < x3 < x4
  std::array<double, 4> y{};  // 0 <= y1 < y2 <= 1 < y3 < y4
};
BranchPoints branch_points(const KernelParams& kp);

// Root of R(x, .) = 0 in y with the smaller modulus (Y0), and the mirrored
// X0(y).  The in-disk root of Lemma 1.
Complex y0_root(const KernelParams& kp, Complex x);
Complex x0_root(const KernelParams& kp, Complex y);

}  // namespace aggrnet
