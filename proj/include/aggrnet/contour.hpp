#pragma once
// Closed contours traced by the in-disk kernel roots over the branch cuts.
// For y in [y1, y2] the two x-roots of Q(., y) are complex conjugates; their
// locus is the egg-shaped contour M with |x|^2 = m(Re x).  The mirrored
// contour L (locus of Y(x) for x in [x1, x2]) is obtained by transposing the
// kernel parameters.

#include <vector>

#include "aggrnet/kernel.hpp"

namespace aggrnet {

enum class ContourKind { kM, kL };

class ContourPolar {
 public:
  // which = kM builds the x-root contour; kL transposes kp first.
  ContourPolar(const KernelParams& kp, ContourKind which, int samples);

  // Radius rho(phi) solving delta = cos(phi) * sqrt(m(delta)), rho = delta/cos.
  double rho_of(double phi) const;
  // |x|^2 as a function of delta = Re x on [beta1, beta0].
  double m_of(double delta) const;
  // The real y in [y1, y2] generating the contour point with Re x = delta.
  double zeta_of(double delta) const;

  double beta0() const { return beta0_; }
  double beta1() const { return beta1_; }
  double y1() const { return y1_; }
  double y2() const { return y2_; }
  int samples() const { return static_cast<int>(phi_.size()); }
  const std::vector<double>& angles() const { return phi_; }
  const std::vector<double>& radii() const { return rho_; }
  const KernelParams& params() const { return kp_; }

 private:
  double quad(const std::array<double, 3>& c, double y) const {
    return c[0] + y * (c[1] + y * c[2]);
  }

  KernelParams kp_;
  std::array<double, 3> ah_, bh_, ch_;  // x-quadratic coefficients, in y
  double y1_ = 0.0, y2_ = 0.0;
  double beta0_ = 0.0, beta1_ = 0.0;
  std::vector<double> phi_, rho_;
};

}  // namespace aggrnet
