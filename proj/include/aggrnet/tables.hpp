#pragma once
// Network configuration and precomputed success-probability tables.
//
// All sensors of one coverage area share identical geometry (homogeneous
// areas), so every success probability depends only on transmitter counts.
// Interference conventions:
//   * at the sink, all simultaneous sensor transmitters of both areas
//     interfere with each other;
//   * at an aggregator, only same-area sensor transmitters interfere;
//   * the two aggregators interfere with each other at the sink.

#include <array>
#include <cstdint>
#include <vector>

#include "aggrnet/channel.hpp"
#include "aggrnet/common.hpp"

namespace aggrnet {

struct NetworkConfig {
  int m1 = 1;  // sensors in area 1
  int m2 = 1;  // sensors in area 2
  double t1 = 0.1, t2 = 0.1;        // sensor transmit probabilities
  double alpha1 = 0.8, alpha2 = 0.8;  // aggregator transmit probabilities

  std::array<LinkGeometry, 2> sensor_to_sink;  // per area
  std::array<LinkGeometry, 2> sensor_to_agg;   // per area
  std::array<LinkGeometry, 2> agg_to_sink;     // per aggregator
  ChannelParams channel;

  std::int64_t table_cell_cap = 1 << 22;  // resource guard for build_tables

  NetworkConfig();  // defaults to the symmetric numeric setup (60/130/80 m)
  void validate() const;
};

struct SuccessTables {
  // p_agg[area][i]: sensor -> own aggregator success when i same-area sensors
  // transmit (i >= 1; index 0 is the never-read convention value 1).
  std::array<std::vector<double>, 2> p_agg;
  // p_dir[area][i][j]: sensor(area) -> sink success when i area-1 and j
  // area-2 sensors transmit; the tagged sensor is one of the i (area 1) or j
  // (area 2) transmitters.
  std::array<std::vector<std::vector<double>>, 2> p_dir;

  // Aggregator -> sink.
  std::array<double, 2> p_rel_single{};  // other aggregator silent
  std::array<double, 2> p_rel_both{};    // marginal success when both transmit
  double p_rel_joint = 0.0;              // both packets succeed simultaneously

  // Joint two-transmitter outcomes.
  JointTwoTx joint2_sink;                   // one sensor per area, at the sink
  std::array<JointTwoTx, 2> joint2_agg{};   // two same-area sensors, at R_area
  JointTwoTx joint2_rel;                    // the two aggregators, at the sink

  double p_agg_at(int area, int i) const { return p_agg[area][i]; }
  double p_dir_at(int area, int i, int j) const { return p_dir[area][i][j]; }
};

SuccessTables build_tables(const NetworkConfig& cfg);

// Symmetric-system probability bundle used by the closed-form delay module
// and the kernel/BVP machinery (two sensors, one per area).
enum class Sbar0Mode {
  kNeither,     // sbar0 = probability that both sensor packets fail at the sink
  kComplement,  // sbar0 = 1 - s0D (literal complement reading)
};

struct SymmetricParams {
  double alpha = 0.8;  // aggregator transmit probability
  double t = 0.1;      // sensor transmit probability
  double s1R = 1.0;    // sensor -> aggregator, single transmitter
  double s2R = 1.0;    // sensor -> aggregator, two same-receiver transmitters
  double s1D = 1.0;    // sensor -> sink alone (marginal)
  double s2D = 1.0;    // sensor -> sink marginal when both sensors transmit
  double s0D = 1.0;    // both sensor packets succeed at the sink
  double r1D = 1.0;    // aggregator -> sink alone
  double r2D = 1.0;    // aggregator -> sink marginal when both transmit
  double r0D = 0.0;    // both aggregator packets succeed
  Sbar0Mode sbar0_mode = Sbar0Mode::kNeither;

  // Exclusive outcome helpers.
  double s_only() const { return s2D - s0D; }     // exactly this sensor succeeds
  double p_bar() const { return 1.0 - s0D - 2.0 * s_only(); }  // neither does
  double r_only() const { return r2D - r0D; }
  double sbar0() const {
    return sbar0_mode == Sbar0Mode::kNeither ? p_bar() : 1.0 - s0D;
  }

  // Kernel shorthand.
  double alpha_hat() const { return (1.0 - alpha) * r1D + alpha * r_only(); }
  double d() const { return alpha * (alpha_hat() - r1D); }
  double mu_sat() const { return alpha * (alpha_hat() + alpha * r0D); }

  void validate() const;
};

// Extracts SymmetricParams from a symmetric NetworkConfig (m1 = m2 = 1,
// t1 = t2, alpha1 = alpha2, mirrored geometry).
SymmetricParams make_symmetric_params(const NetworkConfig& cfg,
                                      const SuccessTables& tables);

}  // namespace aggrnet
