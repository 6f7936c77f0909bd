#include "aggrnet/tables.hpp"

#include <cmath>

namespace aggrnet {

NetworkConfig::NetworkConfig() {
  // Symmetric reference setup: sensors 130 m from the sink at 1 mW, 60 m from
  // their aggregator at 1 mW; aggregators 80 m from the sink at 10 mW; path
  // loss exponent 4 everywhere.
  for (int a = 0; a < 2; ++a) {
    sensor_to_sink[a] = {130.0, 1e-3, 4.0, 1.0};
    sensor_to_agg[a] = {60.0, 1e-3, 4.0, 1.0};
    agg_to_sink[a] = {80.0, 1e-2, 4.0, 1.0};
  }
}

void NetworkConfig::validate() const {
  if (m1 < 0 || m2 < 0 || m1 + m2 < 1)
    throw ConfigError("need m1, m2 >= 0 and m1 + m2 >= 1");
  auto prob = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
      throw ConfigError(std::string(name) + " must be in [0, 1]");
  };
  prob(t1, "t1");
  prob(t2, "t2");
  prob(alpha1, "alpha1");
  prob(alpha2, "alpha2");
  for (int a = 0; a < 2; ++a) {
    sensor_to_sink[a].validate();
    sensor_to_agg[a].validate();
    agg_to_sink[a].validate();
  }
  channel.validate();
}

SuccessTables build_tables(const NetworkConfig& cfg) {
  cfg.validate();
  const std::int64_t cells =
      static_cast<std::int64_t>(cfg.m1 + 1) * (cfg.m2 + 1);
  if (cells > cfg.table_cell_cap)
    throw ConfigError("success table size exceeds configured cell cap");

  SuccessTables tb;
  const std::array<int, 2> m{cfg.m1, cfg.m2};

  for (int area = 0; area < 2; ++area) {
    // Sensor -> own aggregator; same-area interferers only.
    tb.p_agg[area].assign(m[area] + 1, 1.0);
    for (int i = 1; i <= m[area]; ++i) {
      std::vector<LinkGeometry> intf(i - 1, cfg.sensor_to_agg[area]);
      tb.p_agg[area][i] =
          marginal_success(cfg.sensor_to_agg[area], intf, cfg.channel);
    }

    // Sensor -> sink; all transmitters of both areas interfere.
    tb.p_dir[area].assign(cfg.m1 + 1, std::vector<double>(cfg.m2 + 1, 1.0));
    for (int i = 0; i <= cfg.m1; ++i) {
      for (int j = 0; j <= cfg.m2; ++j) {
        const int own = area == 0 ? i : j;
        if (own == 0) continue;  // convention value 1, never read
        std::vector<LinkGeometry> intf;
        intf.insert(intf.end(), area == 0 ? i - 1 : i, cfg.sensor_to_sink[0]);
        intf.insert(intf.end(), area == 0 ? j : j - 1, cfg.sensor_to_sink[1]);
        tb.p_dir[area][i][j] =
            marginal_success(cfg.sensor_to_sink[area], intf, cfg.channel);
      }
    }
  }

  // Aggregator -> sink.
  for (int k = 0; k < 2; ++k)
    tb.p_rel_single[k] = marginal_success(cfg.agg_to_sink[k], {}, cfg.channel);
  tb.joint2_rel = joint_two_tx(cfg.agg_to_sink[0], cfg.agg_to_sink[1], cfg.channel);
  tb.p_rel_both[0] = tb.joint2_rel.p_both + tb.joint2_rel.p_only_a;
  tb.p_rel_both[1] = tb.joint2_rel.p_both + tb.joint2_rel.p_only_b;
  tb.p_rel_joint = tb.joint2_rel.p_both;

  // Joint sensor-pair outcomes.
  tb.joint2_sink =
      joint_two_tx(cfg.sensor_to_sink[0], cfg.sensor_to_sink[1], cfg.channel);
  for (int area = 0; area < 2; ++area)
    tb.joint2_agg[area] = joint_two_tx(cfg.sensor_to_agg[area],
                                       cfg.sensor_to_agg[area], cfg.channel);
  return tb;
}

void SymmetricParams::validate() const {
  auto prob = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
      throw ConfigError(std::string(name) + " must be in [0, 1]");
  };
  prob(alpha, "alpha");
  prob(t, "t");
  prob(s1R, "s1R");
  prob(s2R, "s2R");
  prob(s1D, "s1D");
  prob(s2D, "s2D");
  prob(s0D, "s0D");
  prob(r1D, "r1D");
  prob(r2D, "r2D");
  prob(r0D, "r0D");
  if (s0D > s2D + 1e-12)
    throw ConfigError("joint s0D cannot exceed marginal s2D");
  if (r0D > r2D + 1e-12)
    throw ConfigError("joint r0D cannot exceed marginal r2D");
}

SymmetricParams make_symmetric_params(const NetworkConfig& cfg,
                                      const SuccessTables& tables) {
  if (cfg.m1 != 1 || cfg.m2 != 1)
    throw ConfigError("symmetric params require one sensor per area");
  if (std::abs(cfg.t1 - cfg.t2) > 1e-15 ||
      std::abs(cfg.alpha1 - cfg.alpha2) > 1e-15)
    throw ConfigError("symmetric params require t1 = t2 and alpha1 = alpha2");

  SymmetricParams p;
  p.alpha = cfg.alpha1;
  p.t = cfg.t1;
  // One sensor per area: never a same-area interferer at the aggregator.
  p.s1R = tables.p_agg[0][1];
  p.s2R = tables.p_agg[0][1];
  p.s1D = tables.p_dir[0][1][0];
  p.s2D = tables.p_dir[0][1][1];
  p.s0D = tables.joint2_sink.p_both;
  p.r1D = tables.p_rel_single[0];
  p.r2D = tables.p_rel_both[0];
  p.r0D = tables.p_rel_joint;
  p.validate();
  return p;
}

}  // namespace aggrnet
