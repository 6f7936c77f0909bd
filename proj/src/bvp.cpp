#include "aggrnet/bvp.hpp"

#include <cmath>
#include <sstream>

namespace aggrnet {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Contour sample points x_k = gamma0(e^{i phi_k}) via Plemelj-Sokhotski:
// boundary values are rho(psi_k) e^{i psi_k}.
std::vector<Complex> contour_samples(const ContourPolar& contour,
                                     const ConformalMap& map) {
  const int m = map.samples();
  std::vector<Complex> xs(m);
  for (int k = 0; k < m; ++k)
    xs[k] = std::polar(contour.rho_of(map.psi()[k]), map.psi()[k]);
  return xs;
}

std::vector<Complex> u_samples(const KernelParams& kp,
                               const std::vector<Complex>& xs,
                               const PoleInfo& pole) {
  std::vector<Complex> u(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const Complex y = y0_root(kp, xs[k]);
    u[k] = coeff_a_xy(kp, xs[k], y) / coeff_b_xy(kp, xs[k], y);
    if (pole.r == 1) u[k] /= (xs[k] - pole.xbar);
  }
  return u;
}

double wrap_to_pi(double a) {
  while (a > kPi) a -= 2.0 * kPi;
  while (a < -kPi) a += 2.0 * kPi;
  return a;
}

std::string echo_params(const KernelParams& kp) {
  std::ostringstream os;
  os << "a1=" << kp.a1 << " a2=" << kp.a2 << " ah1=" << kp.ah1
     << " ah2=" << kp.ah2 << " p1=" << kp.p1 << " p2=" << kp.p2
     << " l1=" << kp.l1 << " l2=" << kp.l2 << " L=" << kp.L;
  return os.str();
}

}  // namespace

BvpCase classify_case(const KernelParams& kp) {
  // With the capture restriction the tilde quantities equal the hats.
  const double sum = kp.ah2 / kp.p1 + kp.ah1 / kp.p2;
  return std::abs(sum - 1.0) <= 1e-12 ? BvpCase::kDirichlet
                                      : BvpCase::kRiemannHilbert;
}

double dirichlet_rho(const KernelParams& kp) {
  return kp.l1 / (kp.a1 * kp.p1) + kp.l2 / (kp.a2 * kp.p2);
}

PoleInfo detect_pole(const KernelParams& kp, const ContourPolar& contour) {
  PoleInfo pole;
  auto a_on_axis = [&](double s) {
    const Complex y = y0_root(kp, Complex(s, 0.0));
    return coeff_a_xy(kp, Complex(s, 0.0), Complex(y.real(), 0.0)).real();
  };
  const int n = 200;
  const double lo = 1.0 + 1e-6, hi = contour.beta0() - 1e-6;
  if (hi <= lo) return pole;
  double prev_s = lo, prev_v = a_on_axis(lo);
  for (int i = 1; i <= n; ++i) {
    const double s = lo + (hi - lo) * i / n;
    const double v = a_on_axis(s);
    if (prev_v * v < 0.0) {
      pole.xbar = bisect(a_on_axis, prev_s, s);
      pole.r = 1;
      return pole;
    }
    prev_s = s;
    prev_v = v;
  }
  return pole;
}

IndexReport rh_index(const KernelParams& kp, const ContourPolar& contour,
                     const ConformalMap& map, const PoleInfo& pole) {
  IndexReport rep;
  const auto xs = contour_samples(contour, map);
  const auto u = u_samples(kp, xs, pole);

  double total = 0.0, prev = std::arg(u[0]);
  for (std::size_t k = 1; k <= u.size(); ++k) {
    const double a = std::arg(u[k % u.size()]);
    total += wrap_to_pi(a - prev);
    prev = a;
  }
  rep.chi_numeric = -total / kPi;

  const bool cond1 = kp.l1 < kp.a1 * kp.p1 + kp.d1 * kp.l2 / (kp.a2 * kp.ah1);
  const bool cond2 = kp.l2 < kp.a2 * kp.p2 + kp.d2 * kp.l1 / (kp.a1 * kp.ah2);
  rep.lemma_zero = (kp.l2 < kp.a2 * kp.ah1) ? (cond1 && cond2) : cond2;
  rep.consistent = (std::abs(rep.chi_numeric) < 0.5) == rep.lemma_zero;
  if (!rep.consistent)
    throw NumericError("Riemann-Hilbert index: numeric winding chi = " +
                       std::to_string(rep.chi_numeric) +
                       " disagrees with the index lemma (" + echo_params(kp) +
                       ")");
  return rep;
}

BvpSolve::BvpSolve(const KernelParams& kp, int samples, double tol,
                   int max_iters)
    : kp_(kp) {
  kp_.validate();
  contour_ = std::make_shared<const ContourPolar>(kp_, ContourKind::kM, samples);
  map_ = std::make_shared<const ConformalMap>(
      theodorsen(*contour_, tol, max_iters));
  boundary_.case_tag = classify_case(kp_);
  boundary_.pole = detect_pole(kp_, *contour_);

  if (boundary_.case_tag == BvpCase::kDirichlet) {
    solve_dirichlet();
  } else {
    solve_riemann_hilbert();
  }

  // Derivative H1(1,0): Richardson-extrapolated central difference.
  const double h = 1e-4;
  const double d_a = (h_x0(1.0 + h) - h_x0(1.0 - h)) / (2.0 * h);
  const double d_b = (h_x0(1.0 + 0.5 * h) - h_x0(1.0 - 0.5 * h)) / h;
  boundary_.dh10 = (4.0 * d_b - d_a) / 3.0;

  // Conservation-of-flow residuals (capture case: tilde = hat).
  const double both = 1.0 - boundary_.h10 - boundary_.h01 + boundary_.h00;
  boundary_.con_residual[0] =
      kp_.l1 - (kp_.a1 * kp_.ah2 * both +
                kp_.a1 * kp_.p1 * (boundary_.h10 - boundary_.h00));
  boundary_.con_residual[1] =
      kp_.l2 - (kp_.a2 * kp_.ah1 * both +
                kp_.a2 * kp_.p2 * (boundary_.h01 - boundary_.h00));
}

double BvpSolve::cauchy_exp(double z) const {
  // E(z) = exp((1/M) sum_j i*logJ_j * t_j/(t_j - z)); real on the real axis
  // by conjugate symmetry of the samples.
  const int m = map_->samples();
  Complex s = 0.0;
  for (int j = 0; j < m; ++j) {
    const Complex t = std::polar(1.0, map_->phi()[j]);
    s += Complex(0.0, log_j_[j]) * t / (t - z);
  }
  return std::exp(s / static_cast<double>(m)).real();
}

void BvpSolve::solve_riemann_hilbert() {
  const IndexReport idx =
      rh_index(kp_, *contour_, *map_, boundary_.pole);
  boundary_.chi = idx.chi_numeric;
  if (!idx.lemma_zero)
    throw InstabilityError(
        "Riemann-Hilbert index chi != 0: outside the stable regime (" +
        echo_params(kp_) + ")");

  const auto xs = contour_samples(*contour_, *map_);
  const auto u = u_samples(kp_, xs, boundary_.pole);

  // logJ = arg(conj(U)/U) = -2 arg U, unwrapped along the sample sequence.
  const int m = static_cast<int>(u.size());
  log_j_.resize(m);
  double prev = -2.0 * std::arg(u[0]);
  log_j_[0] = prev;
  for (int k = 1; k < m; ++k) {
    const double raw = -2.0 * std::arg(u[k]);
    const double step = wrap_to_pi(raw - prev);
    if (std::abs(step) > 0.9 * kPi)
      throw NumericError(
          "log J branch jump near pi between adjacent contour samples; "
          "increase the sample count M");
    prev += step;
    log_j_[k] = prev;
  }

  // H(x,0) = K (x - xbar)^{-r} E(gamma(x)) - c0 H(0,0).
  c0_ = kp_.a1 * kp_.p1 * kp_.d2 /
        (kp_.d1 * kp_.d2 - kp_.a1 * kp_.ah2 * kp_.a2 * kp_.ah1);

  // Conservation relations, linear in (H10, H01) given H00:
  //   m11 H10 + m12 H01 = r0_1 + H00 * r1_1
  //   m21 H10 + m22 H01 = r0_2 + H00 * r1_2
  const double m11 = kp_.a1 * (kp_.p1 - kp_.ah2), m12 = -kp_.a1 * kp_.ah2;
  const double m21 = -kp_.a2 * kp_.ah1, m22 = kp_.a2 * (kp_.p2 - kp_.ah1);
  const double det = m11 * m22 - m12 * m21;
  if (std::abs(det) < 1e-300)
    throw NumericError("conservation-of-flow system is singular");
  const double r01 = kp_.l1 - kp_.a1 * kp_.ah2;
  const double r02 = kp_.l2 - kp_.a2 * kp_.ah1;
  const double r11 = kp_.a1 * (kp_.p1 - kp_.ah2);
  const double r12 = kp_.a2 * (kp_.p2 - kp_.ah1);
  const double u0 = (m22 * r01 - m12 * r02) / det;
  const double u1 = (m22 * r11 - m12 * r12) / det;
  const double v0 = (m11 * r02 - m21 * r01) / det;
  const double v1 = (m11 * r12 - m21 * r11) / det;

  const int r = boundary_.pole.r;
  const double xbar = boundary_.pole.xbar;
  const double pref0 = r ? 1.0 / (0.0 - xbar) : 1.0;
  const double pref1 = r ? 1.0 / (1.0 - xbar) : 1.0;
  const double e0 = cauchy_exp(0.0);
  const double e1 = cauchy_exp(map_->z_at_one());

  // Unknowns (H00, K):
  //   (1 + c0) H00 - pref0 E0 K = 0                     (definition at x = 0)
  //   (u1 + c0) H00 - pref1 E1 K = -u0                  (con relation at x = 1)
  const double a11 = 1.0 + c0_, a12 = -pref0 * e0;
  const double a21 = u1 + c0_, a22 = -pref1 * e1;
  const double det2 = a11 * a22 - a12 * a21;
  if (std::abs(det2) < 1e-300)
    throw NumericError("constant-fixing system is singular");
  // Cramer on [a11 a12; a21 a22] [H00; K] = [0; -u0].
  boundary_.h00 = (0.0 * a22 - a12 * (-u0)) / det2;
  k_const_ = (a11 * (-u0) - a21 * 0.0) / det2;
  boundary_.h10 = u0 + u1 * boundary_.h00;
  boundary_.h01 = v0 + v1 * boundary_.h00;
}

void BvpSolve::solve_dirichlet() {
  if (boundary_.pole.r == 1)
    throw NumericError(
        "Dirichlet case with a pole of H(x,0) is degenerate and unsupported");
  rho_load_ = dirichlet_rho(kp_);
  if (!(rho_load_ < 1.0))
    throw InstabilityError("Dirichlet case requires rho < 1");
  boundary_.chi = 0.0;

  // Boundary data f(e^{i phi_k}) = Re(-i C/A) at the contour image points.
  const auto xs = contour_samples(*contour_, *map_);
  const int m = static_cast<int>(xs.size());
  f_.resize(m);
  for (int k = 0; k < m; ++k) {
    const Complex y = y0_root(kp_, xs[k]);
    const Complex ratio = coeff_c_xy(kp_, xs[k], y) / coeff_a_xy(kp_, xs[k], y);
    f_[k] = (Complex(0.0, -1.0) * ratio).real();
  }

  boundary_.h00 = 1.0 - rho_load_;
  boundary_.h10 = h_x0(1.0);
  // H(0,1) from the first conservation relation.
  boundary_.h01 = (kp_.a1 * kp_.ah2 * (1.0 + boundary_.h00 - boundary_.h10) +
                   kp_.a1 * kp_.p1 * (boundary_.h10 - boundary_.h00) - kp_.l1) /
                  (kp_.a1 * kp_.ah2);
}

double BvpSolve::h_x0(double x) const {
  const double z = map_->gamma_real(x);
  if (boundary_.case_tag == BvpCase::kRiemannHilbert) {
    const double pref =
        boundary_.pole.r ? 1.0 / (x - boundary_.pole.xbar) : 1.0;
    return k_const_ * pref * cauchy_exp(z) - c0_ * boundary_.h00;
  }
  // Dirichlet integral representation on [0, pi] (f is odd, endpoints vanish).
  const int m = map_->samples();
  double integral = 0.0;
  for (int k = 1; k < m / 2; ++k) {
    const double phi = map_->phi()[k];
    integral += f_[k] * std::sin(phi) /
                (1.0 - 2.0 * z * std::cos(phi) + z * z);
  }
  integral *= 2.0 * kPi / m;
  return (1.0 - rho_load_) * (1.0 - (2.0 * z / kPi) * integral);
}

double BvpSolve::mean_delay1() const {
  if (kp_.l1 <= 0.0) throw ConfigError("no traffic: lambda1 = 0");
  return (kp_.l1 * (1.0 - kp_.l1) + kp_.d1 * boundary_.dh10) /
         (kp_.l1 * (kp_.a1 * kp_.ah2 - kp_.l1));
}

std::pair<double, double> mean_delays(const KernelParams& kp, int samples,
                                      double tol, int max_iters) {
  const BvpSolve s1(kp, samples, tol, max_iters);
  const BvpSolve s2(kp.transpose(), samples, tol, max_iters);
  return {s1.mean_delay1(), s2.mean_delay1()};
}

}  // namespace aggrnet
