#include "aggrnet/channel.hpp"

#include <cmath>

#include "aggrnet/rng.hpp"

namespace aggrnet {

void LinkGeometry::validate() const {
  if (!(distance > 0.0)) throw ConfigError("link distance must be > 0");
  if (!(tx_power > 0.0)) throw ConfigError("link tx power must be > 0");
  if (!(path_loss_exp >= 2.0)) throw ConfigError("path loss exponent must be >= 2");
  if (!(fading_param > 0.0)) throw ConfigError("fading parameter must be > 0");
}

void ChannelParams::validate() const {
  if (!(sinr_threshold > 0.0)) throw ConfigError("SINR threshold must be > 0");
  if (!(noise_power >= 0.0)) throw ConfigError("noise power must be >= 0");
}

double received_power_factor(const LinkGeometry& geom) {
  geom.validate();
  return geom.tx_power * std::pow(geom.distance, -geom.path_loss_exp);
}

double marginal_success(const LinkGeometry& target,
                        const std::vector<LinkGeometry>& interferers,
                        const ChannelParams& ch) {
  ch.validate();
  const double g = ch.sinr_threshold;
  const double vh = target.fading_param * received_power_factor(target);
  double p = std::exp(-g * ch.noise_power / vh);
  for (const auto& intf : interferers) {
    const double vhi = intf.fading_param * received_power_factor(intf);
    p /= 1.0 + g * vhi / vh;
  }
  return p;
}

JointTwoTx joint_two_tx(const LinkGeometry& link_a, const LinkGeometry& link_b,
                        const ChannelParams& ch) {
  ch.validate();
  const double g = ch.sinr_threshold;
  const double eta = ch.noise_power;
  const double a = link_a.fading_param * received_power_factor(link_a);
  const double b = link_b.fading_param * received_power_factor(link_b);

  // Both succeed iff aX >= g(bY + eta) and bY >= g(aX + eta).  Chaining the
  // two inequalities forces g < 1 regardless of the powers; otherwise the
  // wedge a*X in (g*b*Y + g*eta, b*Y/g - eta) is empty.
  double p_both = 0.0;
  if (g < 1.0) {
    const double c1 = g * b / a;        // lower wedge slope in (Y, X) space
    const double c2i = b / (g * a);     // upper wedge slope
    const double y0 =
        eta > 0.0 ? eta * (1.0 + g) / (a * (c2i - c1)) : 0.0;  // wedge apex
    p_both = std::exp(-g * eta / a) * std::exp(-(1.0 + c1) * y0) / (1.0 + c1) -
             std::exp(eta / a) * std::exp(-(1.0 + c2i) * y0) / (1.0 + c2i);
    if (p_both < 0.0) p_both = 0.0;
  }

  std::vector<LinkGeometry> only_b{link_b};
  std::vector<LinkGeometry> only_a{link_a};
  const double m_a = marginal_success(link_a, only_b, ch);
  const double m_b = marginal_success(link_b, only_a, ch);

  JointTwoTx out;
  out.p_both = p_both;
  out.p_only_a = m_a - p_both;
  out.p_only_b = m_b - p_both;
  out.p_neither = 1.0 - m_a - m_b + p_both;
  if (out.p_only_a < -1e-12 || out.p_only_b < -1e-12 || out.p_neither < -1e-12)
    throw NumericError("joint_two_tx produced a negative outcome probability");
  return out;
}

JointTwoTx joint_two_tx_mc(const LinkGeometry& link_a,
                           const LinkGeometry& link_b, const ChannelParams& ch,
                           std::uint64_t samples, std::uint64_t seed) {
  ch.validate();
  const double g = ch.sinr_threshold;
  const double eta = ch.noise_power;
  const double a = link_a.fading_param * received_power_factor(link_a);
  const double b = link_b.fading_param * received_power_factor(link_b);

  CounterRng rng(seed, /*stream=*/0);
  std::uint64_t n_both = 0, n_a = 0, n_b = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const double x = rng.exponential(i, 0);
    const double y = rng.exponential(i, 1);
    const bool sa = a * x >= g * (b * y + eta);
    const bool sb = b * y >= g * (a * x + eta);
    n_both += sa && sb;
    n_a += sa && !sb;
    n_b += sb && !sa;
  }
  JointTwoTx out;
  const double inv = 1.0 / static_cast<double>(samples);
  out.p_both = n_both * inv;
  out.p_only_a = n_a * inv;
  out.p_only_b = n_b * inv;
  out.p_neither = 1.0 - out.p_both - out.p_only_a - out.p_only_b;
  return out;
}

}  // namespace aggrnet
