#include "aggrnet/kernel.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace aggrnet {

KernelParams KernelParams::transpose() const {
  KernelParams t = *this;
  std::swap(t.a1, t.a2);
  std::swap(t.ah1, t.ah2);
  std::swap(t.p1, t.p2);
  std::swap(t.d1, t.d2);
  std::swap(t.l1, t.l2);
  std::swap(t.t1, t.t2);
  return t;
}

void KernelParams::validate() const {
  auto prob = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
      throw ConfigError(std::string(name) + " must be in [0, 1]");
  };
  prob(a1, "alpha1");
  prob(a2, "alpha2");
  prob(ah1, "alpha_hat1");
  prob(ah2, "alpha_hat2");
  prob(p1, "p1");
  prob(p2, "p2");
  prob(t1, "t1");
  prob(t2, "t2");
  if (!(l1 >= 0.0 && l2 >= 0.0 && L >= 0.0))
    throw ConfigError("arrival intensities must be non-negative");
  if (L > std::min(l1, l2) + 1e-12)
    throw ConfigError("joint-arrival constant exceeds a marginal rate");
  if (!(l1 < a1 * ah2))
    throw InstabilityError("lambda1 >= alpha1 * alpha_hat2: kernel analysis "
                           "requires a stable queue 1");
}

KernelParams make_kernel_params(const NetworkConfig& cfg,
                                const SuccessTables& tables) {
  if (cfg.m1 != 1 || cfg.m2 != 1)
    throw ConfigError("kernel parameters require one sensor per area");
  if (tables.p_rel_joint > 1e-15)
    throw ConfigError(
        "kernel analysis requires the capture case (joint relay success = 0)");

  KernelParams kp;
  kp.a1 = cfg.alpha1;
  kp.a2 = cfg.alpha2;
  kp.t1 = cfg.t1;
  kp.t2 = cfg.t2;
  // alpha_hat_2 multiplies alpha_1 in queue 1's saturated service rate:
  // R1 delivers given it transmits, averaging over R2's transmit decision.
  kp.ah2 = (1.0 - cfg.alpha2) * tables.p_rel_single[0] +
           cfg.alpha2 * tables.p_rel_both[0];
  kp.ah1 = (1.0 - cfg.alpha1) * tables.p_rel_single[1] +
           cfg.alpha1 * tables.p_rel_both[1];
  kp.p1 = tables.p_rel_single[0];
  kp.p2 = tables.p_rel_single[1];
  kp.d1 = kp.a1 * (kp.ah2 - kp.p1);
  kp.d2 = kp.a2 * (kp.ah1 - kp.p2);

  // Arrival intensities: the tagged sensor misses the sink but its aggregator
  // captures.  With one sensor per area there is never same-area interference
  // at the aggregator.
  const JointTwoTx& js = tables.joint2_sink;
  const double cap1 = tables.p_agg[0][1];
  const double cap2 = tables.p_agg[1][1];
  const double f1_alone = 1.0 - tables.p_dir[0][1][0];
  const double f2_alone = 1.0 - tables.p_dir[1][0][1];
  kp.l1 = cfg.t1 * (1.0 - cfg.t2) * f1_alone * cap1 +
          cfg.t1 * cfg.t2 * (js.p_neither + js.p_only_b) * cap1;
  kp.l2 = cfg.t2 * (1.0 - cfg.t1) * f2_alone * cap2 +
          cfg.t1 * cfg.t2 * (js.p_neither + js.p_only_a) * cap2;
  kp.L = cfg.t1 * cfg.t2 * js.p_neither * cap1 * cap2;
  kp.validate();
  return kp;
}

KernelParams make_kernel_params(const SymmetricParams& p) {
  if (p.r0D > 1e-15)
    throw ConfigError(
        "kernel analysis requires the capture case (r0D = 0)");
  KernelParams kp;
  kp.a1 = kp.a2 = p.alpha;
  kp.t1 = kp.t2 = p.t;
  kp.ah1 = kp.ah2 = p.alpha_hat();
  kp.p1 = kp.p2 = p.r1D;
  kp.d1 = kp.d2 = p.alpha * (p.alpha_hat() - p.r1D);
  const double lam =
      p.t * (1.0 - p.t) * (1.0 - p.s1D) * p.s1R +
      p.t * p.t * (p.p_bar() + p.s_only()) * p.s2R;
  kp.l1 = kp.l2 = lam;
  kp.L = p.t * p.t * p.p_bar() * p.s2R * p.s2R;
  kp.validate();
  return kp;
}

Complex arrival_pgf(const KernelParams& kp, Complex x, Complex y) {
  return 1.0 - (1.0 - x) * kp.l1 - (1.0 - y) * kp.l2 +
         (1.0 - x) * (1.0 - y) * kp.L;
}

Complex kernel_q(const KernelParams& kp, Complex x, Complex y) {
  return x * y - arrival_pgf(kp, x, y) *
                     (x * y - kp.a1 * kp.ah2 * y * (x - 1.0) -
                      kp.ah1 * kp.a2 * x * (y - 1.0));
}

Complex kernel_eval(const KernelParams& kp, Complex x, Complex y) {
  return kernel_q(kp, x, y) / (x * y);
}

Complex coeff_a_xy(const KernelParams& kp, Complex x, Complex y) {
  return arrival_pgf(kp, x, y) *
         (kp.d1 * y * (x - 1.0) + kp.a2 * kp.ah1 * x * (y - 1.0));
}

Complex coeff_b_xy(const KernelParams& kp, Complex x, Complex y) {
  return arrival_pgf(kp, x, y) *
         (kp.d2 * x * (y - 1.0) + kp.a1 * kp.ah2 * y * (x - 1.0));
}

Complex coeff_c_xy(const KernelParams& kp, Complex x, Complex y) {
  return arrival_pgf(kp, x, y) *
         (kp.d1 * y * (1.0 - x) + kp.d2 * x * (1.0 - y));
}

std::array<Complex, 3> y_quadratic(const KernelParams& kp, Complex x) {
  // Q(x, .) is an exact quadratic in y; recover coefficients from three
  // evaluations.
  const Complex c = kernel_q(kp, x, 0.0);
  const Complex s1 = kernel_q(kp, x, 1.0);
  const Complex sm1 = kernel_q(kp, x, -1.0);
  return {0.5 * (s1 + sm1) - c, 0.5 * (s1 - sm1), c};
}

std::array<Complex, 3> x_quadratic(const KernelParams& kp, Complex y) {
  const Complex c = kernel_q(kp, 0.0, y);
  const Complex s1 = kernel_q(kp, 1.0, y);
  const Complex sm1 = kernel_q(kp, -1.0, y);
  return {0.5 * (s1 + sm1) - c, 0.5 * (s1 - sm1), c};
}

namespace {

// Discriminant b^2 - 4ac of Q along one axis at a real point on the other.
double disc_at(const KernelParams& kp, bool along_y, double at) {
  const auto q = along_y ? y_quadratic(kp, at) : x_quadratic(kp, at);
  return (q[1] * q[1] - 4.0 * q[0] * q[2]).real();
}

// The discriminant is an exact quartic; interpolate on {0, +-1, +-2}.
std::array<double, 5> quartic_coeffs(const KernelParams& kp, bool along_y) {
  const std::array<double, 5> pts{0.0, 1.0, -1.0, 2.0, -2.0};
  Eigen::MatrixXd v(5, 5);
  Eigen::VectorXd f(5);
  for (int i = 0; i < 5; ++i) {
    double p = 1.0;
    for (int j = 0; j < 5; ++j) {
      v(i, j) = p;
      p *= pts[i];
    }
    f(i) = disc_at(kp, along_y, pts[i]);
  }
  const Eigen::VectorXd c = v.fullPivLu().solve(f);
  return {c(0), c(1), c(2), c(3), c(4)};
}

double poly_eval(const std::array<double, 5>& c, double x) {
  return c[0] + x * (c[1] + x * (c[2] + x * (c[3] + x * c[4])));
}

std::string echo_coeffs(const std::array<double, 5>& c) {
  std::ostringstream os;
  os << "[" << c[0] << ", " << c[1] << ", " << c[2] << ", " << c[3] << ", "
     << c[4] << "]";
  return os.str();
}

// Real roots of a quartic via companion-matrix eigenvalues, polished by
// bisection on a sign-changing bracket around each eigenvalue.
std::array<double, 4> quartic_real_roots(const std::array<double, 5>& c) {
  if (std::abs(c[4]) < 1e-14 * (std::abs(c[0]) + std::abs(c[1]) +
                                std::abs(c[2]) + std::abs(c[3]) + 1e-300))
    throw NumericError("degenerate discriminant quartic, coefficients " +
                       echo_coeffs(c));
  Eigen::Matrix4d comp = Eigen::Matrix4d::Zero();
  for (int i = 0; i < 4; ++i) comp(i, 3) = -c[i] / c[4];
  comp(1, 0) = comp(2, 1) = comp(3, 2) = 1.0;
  const Eigen::EigenSolver<Eigen::Matrix4d> es(comp);

  std::array<double, 4> roots{};
  int found = 0;
  for (int i = 0; i < 4; ++i) {
    const std::complex<double> z = es.eigenvalues()(i);
    if (std::abs(z.imag()) > 1e-8 * (1.0 + std::abs(z))) continue;
    if (found == 4)
      throw NumericError("more than four real roots reported, coefficients " +
                         echo_coeffs(c));
    double r = z.real();
    // Polish: bracket by expanding around the eigenvalue until a sign change.
    const double scale = 1e-6 * (1.0 + std::abs(r));
    double lo = r - scale, hi = r + scale;
    if (poly_eval(c, lo) * poly_eval(c, hi) <= 0.0)
      r = bisect([&](double x) { return poly_eval(c, x); }, lo, hi);
    roots[found++] = r;
  }
  if (found != 4)
    throw NumericError("discriminant quartic has fewer than four real roots, "
                       "coefficients " +
                       echo_coeffs(c));
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

std::array<double, 5> discriminant_x(const KernelParams& kp) {
  return quartic_coeffs(kp, /*along_y=*/true);
}

std::array<double, 5> discriminant_y(const KernelParams& kp) {
  return quartic_coeffs(kp, /*along_y=*/false);
}

BranchPoints branch_points(const KernelParams& kp) {
  BranchPoints bp;
  bp.x = quartic_real_roots(discriminant_x(kp));
  bp.y = quartic_real_roots(discriminant_y(kp));
  const double tol = 1e-9;
  if (!(bp.x[0] > 0.0 && bp.x[1] <= 1.0 + tol && bp.x[2] > 1.0 - tol &&
        bp.x[2] < bp.x[3]))
    throw NumericError("x branch points violate the expected ordering");
  if (!(bp.y[0] >= -tol && bp.y[1] <= 1.0 + tol && bp.y[2] > 1.0 - tol &&
        bp.y[2] < bp.y[3]))
    throw NumericError("y branch points violate the expected ordering");
  return bp;
}

namespace {

Complex smaller_root(const std::array<Complex, 3>& q) {
  const Complex a = q[0], b = q[1], c = q[2];
  const Complex disc = std::sqrt(b * b - 4.0 * a * c);
  const Complex r1 = (-b + disc) / (2.0 * a);
  const Complex r2 = (-b - disc) / (2.0 * a);
  return std::abs(r1) <= std::abs(r2) ? r1 : r2;
}

}  // namespace

Complex y0_root(const KernelParams& kp, Complex x) {
  return smaller_root(y_quadratic(kp, x));
}

Complex x0_root(const KernelParams& kp, Complex y) {
  return smaller_root(x_quadratic(kp, y));
}

}  // namespace aggrnet
