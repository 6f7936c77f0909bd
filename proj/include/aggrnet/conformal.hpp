#pragma once
// Conformal map gamma0 from the unit disk to the interior of a star-like
// contour, via the Theodorsen integral equation (boundary correspondence
// psi(phi) by fixed-point iteration with trapezoid-rule conjugation).

#include <vector>

#include "aggrnet/contour.hpp"

namespace aggrnet {

class ConformalMap {
 public:
  // psi: boundary correspondence at angles phi_k = 2 pi k / M;
  // log_rho[k] = log rho(psi(phi_k)).
  ConformalMap(std::vector<double> phi, std::vector<double> psi,
               std::vector<double> log_rho, int iterations);

  // Interior evaluator (Poisson-type integral); gamma0(0) = 0.
  Complex gamma0(Complex z) const;
  Complex gamma0_derivative(Complex z) const;

  // Inverse map restricted to the real segment of the contour interior:
  // real x in (-rho(pi), rho(0)) -> real z in (-1, 1).
  double gamma_real(double x) const;

  // z0 in [0, 1] with gamma0(z0) = 1, and gamma'(1) = 1 / gamma0'(z0).
  double z_at_one() const { return z0_; }
  double gamma_prime_at_one() const { return dgamma1_; }

  const std::vector<double>& phi() const { return phi_; }
  const std::vector<double>& psi() const { return psi_; }
  int iterations() const { return iterations_; }
  int samples() const { return static_cast<int>(phi_.size()); }

 private:
  std::vector<double> phi_, psi_, log_rho_;
  std::vector<Complex> t_;  // e^{i phi_k}
  int iterations_ = 0;
  double z0_ = 1.0;
  double dgamma1_ = 1.0;
};

// Solve the Theodorsen equation for the given contour.  Throws NumericError
// (with the residual history attached to the message) on non-convergence.
ConformalMap theodorsen(const ContourPolar& contour, double tol = 1e-6,
                        int max_iters = 500);

}  // namespace aggrnet
