#include "aggrnet/conformal.hpp"

#include <cmath>
#include <sstream>

namespace aggrnet {

ConformalMap::ConformalMap(std::vector<double> phi, std::vector<double> psi,
                           std::vector<double> log_rho, int iterations)
    : phi_(std::move(phi)),
      psi_(std::move(psi)),
      log_rho_(std::move(log_rho)),
      iterations_(iterations) {
  t_.resize(phi_.size());
  for (std::size_t k = 0; k < phi_.size(); ++k)
    t_[k] = std::polar(1.0, phi_[k]);

  // gamma(1): gamma0 is real and increasing on [0, 1) from 0 toward beta0 > 1.
  // Stay away from z = +-1 where the quadrature kernel is singular.
  z0_ = bisect([&](double z) { return gamma0(Complex(z, 0.0)).real() - 1.0; },
               0.0, 0.999);
  dgamma1_ = 1.0 / gamma0_derivative(Complex(z0_, 0.0)).real();
}

Complex ConformalMap::gamma0(Complex z) const {
  const int m = samples();
  Complex s = 0.0;
  for (int j = 0; j < m; ++j) s += log_rho_[j] * (t_[j] + z) / (t_[j] - z);
  return z * std::exp(s / static_cast<double>(m));
}

Complex ConformalMap::gamma0_derivative(Complex z) const {
  const int m = samples();
  Complex s = 0.0, ds = 0.0;
  for (int j = 0; j < m; ++j) {
    const Complex den = t_[j] - z;
    s += log_rho_[j] * (t_[j] + z) / den;
    ds += log_rho_[j] * 2.0 * t_[j] / (den * den);
  }
  s /= static_cast<double>(m);
  ds /= static_cast<double>(m);
  return std::exp(s) * (1.0 + z * ds);
}

double ConformalMap::gamma_real(double x) const {
  // Brackets stop short of z = +-1 where the quadrature kernel is singular
  // and the sampled gamma0 loses all accuracy.
  return bisect(
      [&](double z) { return gamma0(Complex(z, 0.0)).real() - x; }, -0.999,
      0.999);
}

ConformalMap theodorsen(const ContourPolar& contour, double tol,
                        int max_iters) {
  const int m = contour.samples();
  std::vector<double> phi(contour.angles());
  std::vector<double> psi(phi);
  std::vector<double> lr(m);
  std::vector<double> history;

  // Precompute the conjugation weights cot((phi_j - phi_k)/2), diagonal 0.
  std::vector<double> cot(static_cast<std::size_t>(m) * m, 0.0);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      if (j == k) continue;
      cot[static_cast<std::size_t>(j) * m + k] =
          1.0 / std::tan(0.5 * (phi[j] - phi[k]));
    }
  }

  for (int it = 1; it <= max_iters; ++it) {
    for (int j = 0; j < m; ++j) lr[j] = std::log(contour.rho_of(psi[j]));
    double err = 0.0;
    std::vector<double> next(m);
    for (int k = 0; k < m; ++k) {
      double conj_sum = 0.0;
      for (int j = 0; j < m; ++j)
        conj_sum += lr[j] * cot[static_cast<std::size_t>(j) * m + k];
      next[k] = phi[k] - conj_sum / m;
      err = std::max(err, std::abs(next[k] - psi[k]));
    }
    psi = std::move(next);
    history.push_back(err);
    if (err < tol) {
      for (int j = 0; j < m; ++j) lr[j] = std::log(contour.rho_of(psi[j]));
      return ConformalMap(std::move(phi), std::move(psi), std::move(lr), it);
    }
  }
  std::ostringstream os;
  os << "Theodorsen iteration did not converge in " << max_iters
     << " steps; residual history (last 10):";
  for (std::size_t i = history.size() >= 10 ? history.size() - 10 : 0;
       i < history.size(); ++i)
    os << " " << history[i];
  throw NumericError(os.str());
}

}  // namespace aggrnet
