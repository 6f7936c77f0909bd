#include "aggrnet/delay_sym.hpp"

#include <cmath>

namespace aggrnet {

double symmetric_arrival_rate(const SymmetricParams& p) {
  p.validate();
  // lambda = t tbar (1 - s1D) s1R + t^2 s2R (sbar0 + sOnly): the tagged
  // sensor's packet misses the sink but is captured by its aggregator.  Under
  // the default "neither" reading, sbar0 + sOnly = 1 - s2D (the marginal
  // failure of the tagged sensor when both transmit).
  const double two_tx_fail =
      p.sbar0_mode == Sbar0Mode::kNeither ? p.sbar0() + p.s_only()
                                          : p.sbar0() + p.s2D;
  return p.t * (1.0 - p.t) * (1.0 - p.s1D) * p.s1R +
         p.t * p.t * two_tx_fail * p.s2R;
}

double symmetric_joint_arrival(const SymmetricParams& p) {
  return p.t * p.t * p.p_bar() * p.s2R * p.s2R;
}

namespace {

struct SymDerived {
  double lambda, L, alpha, ah, d, r0, r1, mu;
};

SymDerived derive(const SymmetricParams& p) {
  SymDerived s;
  s.lambda = symmetric_arrival_rate(p);
  s.L = symmetric_joint_arrival(p);
  s.alpha = p.alpha;
  s.ah = p.alpha_hat();
  s.d = p.d();
  s.r0 = p.r0D;
  s.r1 = p.r1D;
  s.mu = p.mu_sat();
  if (s.lambda <= 0.0) throw ConfigError("no traffic: lambda = 0");
  if (!(s.lambda < s.mu))
    throw InstabilityError("lambda >= alpha(alpha_hat + alpha r0D): unstable");
  return s;
}

// Coefficient of P = Pr(N1>0, N2>0) in D = S + coeff * P (signed).
double p_coefficient(const SymDerived& s) {
  const double den = 2.0 * s.lambda * s.alpha * s.r1 * (s.mu - s.lambda);
  return -s.alpha * s.alpha * s.r0 * (s.d + s.alpha * s.alpha * s.r0) / den;
}

double p_upper_bound(const SymDerived& s) {
  // Any non-empty queue is served at rate >= mu, so Pr(N1 > 0) <= lambda/mu
  // and Pr(N1 > 0, N2 > 0) <= min(1, lambda/mu).
  return std::min(1.0, s.lambda / s.mu);
}

}  // namespace

double delay_exact_part(const SymmetricParams& p) {
  const SymDerived s = derive(p);
  const double a = s.alpha, l = s.lambda;
  const double num = 2.0 * a * s.ah * l + 2.0 * a * a * s.r0 * l -
                     2.0 * a * s.ah * l * l + 2.0 * s.d * l * l -
                     s.L * (a * a * s.r0 + s.d);
  return num / (2.0 * l * a * s.r1 * (s.mu - l));
}

DelayBounds delay_bounds(const SymmetricParams& p) {
  const SymDerived s = derive(p);
  const double S = delay_exact_part(p);
  DelayBounds out;
  if (s.r0 == 0.0) {
    out.lower = out.upper = S;
    out.gap = 0.0;
    out.exact = S;
  } else {
    const double c = p_coefficient(s);
    const double reach = c * p_upper_bound(s);  // D - S over P's full range
    out.lower = std::min(S, S + reach);
    out.upper = std::max(S, S + reach);
    out.gap = std::abs(reach);
  }
  if (!(out.lower > 0.0))
    throw NumericError("non-positive delay lower bound: inconsistent params");
  return out;
}

double bound_gap(const SymmetricParams& p) {
  const SymDerived s = derive(p);
  if (s.r0 == 0.0) return 0.0;
  return std::abs(p_coefficient(s)) * p_upper_bound(s);
}

}  // namespace aggrnet
