#pragma once
// Closed-form mean-delay bounds for the symmetric two-aggregator system, the
// exact delay in the capture/collision cases, and the bound-gap formula.
//
// Derivation sketch (moment relations of the functional equation, validated
// against an exact truncated-Markov-chain oracle):
//   mu    = alpha * (alpha_hat + alpha * r0D)           (saturated service)
//   D     = S + c * P,  P = Pr(N1 > 0, N2 > 0),
//   c     = alpha^2 r0D |d + alpha^2 r0D| / (2 lambda alpha r1D (mu - lambda))
// with S the P-independent part.  For r0D = 0 the delay is exactly S.  For
// r0D > 0, P is bounded by min(1, lambda/mu) (the service rate of a non-empty
// queue is at least mu), which yields the lower/upper bounds and the
// closed-form gap.

#include <optional>

#include "aggrnet/tables.hpp"

namespace aggrnet {

struct DelayBounds {
  double lower = 0.0;  // slots
  double upper = 0.0;  // slots
  double gap = 0.0;    // upper - lower
  std::optional<double> exact;  // present when r0D = 0 (capture / collision)
};

// Per-aggregator arrival rate lambda for the symmetric two-sensor system.
double symmetric_arrival_rate(const SymmetricParams& p);

// Joint-arrival constant L = t^2 * pbar * s2R^2 (both sensors fail at the
// sink and both are captured by their aggregators in the same slot).
double symmetric_joint_arrival(const SymmetricParams& p);

// The P-independent part S of the mean delay (exact delay when r0D = 0).
double delay_exact_part(const SymmetricParams& p);

DelayBounds delay_bounds(const SymmetricParams& p);

// Closed-form |upper - lower|; identical to delay_bounds().gap by algebra.
double bound_gap(const SymmetricParams& p);

}  // namespace aggrnet
