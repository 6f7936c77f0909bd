#pragma once
// Physical-layer success probabilities for the Rayleigh-fading SINR model.
//
// A transmission from a node with received power factor h = P_tx * r^(-theta)
// succeeds at a receiver iff  v*h*X / (eta + sum_k v_k*h_k*X_k) >= gamma,
// where the X's are independent unit-mean exponential fades.  Marginal success
// has the classical product closed form; the joint success of two simultaneous
// transmitters at a common receiver is computed in closed form by integrating
// the two-fade wedge region, with a Monte Carlo integrator kept as an
// independent cross-check oracle.

#include <cstdint>
#include <vector>

#include "aggrnet/common.hpp"

namespace aggrnet {

struct LinkGeometry {
  double distance = 1.0;       // meters, > 0
  double tx_power = 1.0;       // watts, > 0
  double path_loss_exp = 4.0;  // theta, >= 2
  double fading_param = 1.0;   // v, Rayleigh power scale, > 0

  void validate() const;
};

struct ChannelParams {
  double sinr_threshold = 0.5;  // gamma, > 0
  double noise_power = 0.0;     // eta (watts), >= 0; 0 = interference-limited

  void validate() const;
};

// Joint outcome of two simultaneous transmissions toward one receiver.
struct JointTwoTx {
  double p_both = 0.0;
  double p_only_a = 0.0;
  double p_only_b = 0.0;
  double p_neither = 1.0;
};

// h = tx_power * distance^(-theta).
double received_power_factor(const LinkGeometry& geom);

// Eq.-(1)-style marginal: exp(-gamma*eta/(v h)) * prod 1/(1 + gamma v_k h_k/(v h)).
double marginal_success(const LinkGeometry& target,
                        const std::vector<LinkGeometry>& interferers,
                        const ChannelParams& ch);

// Closed-form joint two-transmitter outcome probabilities.
JointTwoTx joint_two_tx(const LinkGeometry& link_a, const LinkGeometry& link_b,
                        const ChannelParams& ch);

// Monte Carlo version of joint_two_tx; independent oracle for tests.
JointTwoTx joint_two_tx_mc(const LinkGeometry& link_a,
                           const LinkGeometry& link_b, const ChannelParams& ch,
                           std::uint64_t samples = 10000000,
                           std::uint64_t seed = 12345);

}  // namespace aggrnet
