#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "aggrnet/conformal.hpp"
#include "aggrnet/contour.hpp"
#include "aggrnet/delay_sym.hpp"
#include "aggrnet/kernel.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace aggrnet;

namespace {

constexpr double kPi = 3.14159265358979323846;

KernelParams reference_kernel(double gamma, double t) {
  NetworkConfig cfg;
  cfg.t1 = cfg.t2 = t;
  cfg.channel.sinr_threshold = gamma;
  return make_kernel_params(cfg, build_tables(cfg));
}

}  // namespace

TEST_CASE("kernel parameters agree with the symmetric closed-form module") {
  NetworkConfig cfg;
  cfg.t1 = cfg.t2 = 0.2;
  cfg.channel.sinr_threshold = 1.2;
  const SuccessTables tb = build_tables(cfg);
  const SymmetricParams sp = make_symmetric_params(cfg, tb);
  const KernelParams kp = make_kernel_params(cfg, tb);
  CHECK(kp.l1 == doctest::Approx(symmetric_arrival_rate(sp)).epsilon(1e-12));
  CHECK(kp.l2 == doctest::Approx(kp.l1).epsilon(1e-12));
  CHECK(kp.L == doctest::Approx(symmetric_joint_arrival(sp)).epsilon(1e-12));
  CHECK(kp.ah1 == doctest::Approx(sp.alpha_hat()).epsilon(1e-12));
  CHECK(kp.d1 == doctest::Approx(sp.d()).epsilon(1e-12));
  // The two construction paths agree.
  const KernelParams kp2 = make_kernel_params(sp);
  CHECK(kp2.l1 == doctest::Approx(kp.l1).epsilon(1e-12));
  CHECK(kp2.ah2 == doctest::Approx(kp.ah2).epsilon(1e-12));
  CHECK(kp2.p1 == doctest::Approx(kp.p1).epsilon(1e-12));
}

TEST_CASE("kernel basics: PGF normalization, R(1,1) = 0, transpose") {
  for (const KernelParams& kp : testing::random_stable_kernels(5, 11)) {
    CHECK(std::abs(arrival_pgf(kp, 1.0, 1.0) - 1.0) < 1e-12);
    CHECK(std::abs(kernel_eval(kp, 1.0, 1.0)) < 1e-12);
    CHECK(std::abs(kernel_q(kp, 1.0, 1.0)) < 1e-12);
    // Q = x y R away from the unit point.
    const Complex x(0.7, 0.2), y(-0.3, 0.5);
    CHECK(std::abs(kernel_q(kp, x, y) - x * y * kernel_eval(kp, x, y)) < 1e-12);
    const KernelParams tp = kp.transpose();
    CHECK(tp.l1 == kp.l2);
    CHECK(tp.ah1 == kp.ah2);
    CHECK(std::abs(kernel_q(tp, y, x) - kernel_q(kp, x, y)) < 1e-12);
  }
}

TEST_CASE("quadratic and discriminant interpolation reproduce Q exactly") {
  const KernelParams kp = reference_kernel(1.2, 0.25);
  for (const Complex x : {Complex(0.4, 0.1), Complex(-0.8, 0.3)}) {
    const auto q = y_quadratic(kp, x);
    for (const Complex y : {Complex(0.9, -0.2), Complex(2.0, 1.0)})
      CHECK(std::abs(q[0] * y * y + q[1] * y + q[2] - kernel_q(kp, x, y)) <
            1e-12);
  }
  // Discriminant of the y-quadratic at arbitrary real x equals the
  // interpolated quartic D_x(x).
  const auto dx = discriminant_x(kp);
  for (double x : {0.3, 0.77, 1.5, 3.0}) {
    const auto q = y_quadratic(kp, x);
    const Complex disc = q[1] * q[1] - 4.0 * q[0] * q[2];
    double poly = 0.0, pw = 1.0;
    for (int k = 0; k < 5; ++k, pw *= x) poly += dx[k] * pw;
    CHECK(std::abs(disc.real() - poly) < 1e-10 * (1.0 + std::abs(poly)));
    CHECK(std::abs(disc.imag()) < 1e-12);
  }
}

TEST_CASE("Lemma 2: branch point ordering and discriminant signs") {
  for (const KernelParams& kp : testing::random_stable_kernels(10, 23)) {
    const BranchPoints bp = branch_points(kp);
    CHECK(bp.x[0] > 0.0);
    CHECK(bp.x[0] < bp.x[1]);
    CHECK(bp.x[1] <= 1.0 + 1e-9);
    CHECK(bp.x[2] >= 1.0 - 1e-9);
    CHECK(bp.x[2] < bp.x[3]);
    CHECK(bp.y[0] >= 0.0);
    CHECK(bp.y[0] < bp.y[1]);
    CHECK(bp.y[1] <= 1.0 + 1e-9);
    // D_x > 0 between x2 and x3 (real y-roots on the cut interval
    // [x2, x3]), D_x < 0 inside (x1, x2) and (x3, x4).
    const auto dx = discriminant_x(kp);
    auto eval = [&](double x) {
      double poly = 0.0, pw = 1.0;
      for (int k = 0; k < 5; ++k, pw *= x) poly += dx[k] * pw;
      return poly;
    };
    CHECK(eval(0.5 * (bp.x[1] + bp.x[2])) > 0.0);
    CHECK(eval(0.5 * (bp.x[0] + bp.x[1])) < 0.0);
    CHECK(eval(0.5 * (bp.x[2] + bp.x[3])) < 0.0);
    // The branch points are roots.
    for (double r : bp.x)
      CHECK(std::abs(eval(r)) < 1e-8 * (1.0 + std::abs(eval(0.0)) +
                                        std::abs(r * r * r * r * dx[4])));
  }
}

TEST_CASE("Lemma 1: Y0 inside the unit disk on the unit circle") {
  for (const KernelParams& kp : testing::random_stable_kernels(10, 37)) {
    for (int k = 1; k < 64; ++k) {
      const Complex x = std::polar(1.0, 2.0 * kPi * k / 64.0);
      const Complex y = y0_root(kp, x);
      CHECK(std::abs(y) < 1.0 + 1e-10);
      // Y0 really is a kernel root.
      CHECK(std::abs(kernel_q(kp, x, y)) < 1e-10);
    }
    // At x = 1 the in-disk root is y = 1 (stable case).
    CHECK(std::abs(y0_root(kp, 1.0) - 1.0) < 1e-9);
    CHECK(std::abs(x0_root(kp, 1.0) - 1.0) < 1e-9);
  }
}

TEST_CASE("Lemma 3: contour endpoints, symmetry, and kernel membership") {
  for (const KernelParams& kp : testing::random_stable_kernels(10, 51)) {
    const ContourPolar ct(kp, ContourKind::kM, 64);
    const BranchPoints bp = branch_points(kp);
    // beta0 = sqrt(c(y2)/a(y2)) > 1 and beta1 < -... < 0 straddle the disk.
    CHECK(ct.beta0() > 1.0);
    CHECK(ct.beta1() < 0.0);
    CHECK(ct.rho_of(0.0) == doctest::Approx(ct.beta0()).epsilon(1e-9));
    CHECK(ct.rho_of(kPi) == doctest::Approx(-ct.beta1()).epsilon(1e-9));
    CHECK(ct.y1() == doctest::Approx(bp.y[0]).epsilon(1e-12));
    CHECK(ct.y2() == doctest::Approx(bp.y[1]).epsilon(1e-12));
    for (double phi : {0.3, 1.1, 2.0, 2.9}) {
      // Symmetry about the real axis.
      CHECK(ct.rho_of(phi) == doctest::Approx(ct.rho_of(-phi)).epsilon(1e-9));
      CHECK(ct.rho_of(phi) > 0.0);
      // Every contour point solves Q(x, zeta) = 0 with zeta in [y1, y2].
      const double rho = ct.rho_of(phi);
      const Complex x = std::polar(rho, phi);
      const double zeta = ct.zeta_of(rho * std::cos(phi));
      CHECK(zeta >= ct.y1() - 1e-9);
      CHECK(zeta <= ct.y2() + 1e-9);
      CHECK(std::abs(kernel_q(kp, x, zeta)) < 1e-8);
    }
  }
}

TEST_CASE("Theodorsen: converges and yields a monotone boundary map") {
  for (const KernelParams& kp : testing::random_stable_kernels(10, 77)) {
    const ContourPolar ct(kp, ContourKind::kM, 128);
    const ConformalMap map = theodorsen(ct, 1e-6, 500);
    CHECK(map.iterations() < 500);
    // psi is a strictly increasing reparameterization of the circle.
    for (int k = 1; k < map.samples(); ++k)
      CHECK(map.psi()[k] > map.psi()[k - 1]);
    CHECK(map.psi().front() >= -0.5);
    CHECK(map.psi().back() <= 2.0 * kPi + 0.5);
    // gamma(1) lies inside the unit disk.
    CHECK(map.z_at_one() > 0.0);
    CHECK(map.z_at_one() < 1.0);
    // gamma_real inverts gamma0 on the real axis.
    const double z = map.gamma_real(1.0);
    CHECK(map.gamma0(Complex(z, 0.0)).real() == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("Theodorsen sanity: a circle maps to the scaled identity") {
  // gamma0 built from constant log rho = log c must be z -> c z.
  const int m = 64;
  std::vector<double> phi(m), psi(m), lr(m, std::log(2.5));
  for (int k = 0; k < m; ++k) phi[k] = psi[k] = 2.0 * kPi * k / m;
  const ConformalMap map(phi, psi, lr, 1);
  for (const Complex z : {Complex(0.3, 0.1), Complex(-0.5, 0.4), Complex(0.0, -0.6)})
    CHECK(std::abs(map.gamma0(z) - 2.5 * z) < 1e-10);
  CHECK(map.z_at_one() == doctest::Approx(1.0 / 2.5).epsilon(1e-9));
}

TEST_CASE("contour kind L is the transposed problem") {
  const KernelParams kp = reference_kernel(1.2, 0.25);
  const ContourPolar cm(kp.transpose(), ContourKind::kM, 32);
  const ContourPolar cl(kp, ContourKind::kL, 32);
  CHECK(cl.beta0() == doctest::Approx(cm.beta0()).epsilon(1e-12));
  CHECK(cl.rho_of(1.0) == doctest::Approx(cm.rho_of(1.0)).epsilon(1e-12));
}
