#include "aggrnet/stability.hpp"

#include <algorithm>
#include <cmath>

#include "aggrnet/throughput.hpp"

namespace aggrnet {

double service_rate(int i, const NetworkConfig& cfg, const SuccessTables& tables,
                    double p_other_empty) {
  if (!(p_other_empty >= 0.0 && p_other_empty <= 1.0))
    throw ConfigError("p_other_empty must be in [0, 1]");
  const int j = 1 - i;
  const double ai = i == 0 ? cfg.alpha1 : cfg.alpha2;
  const double aj = j == 0 ? cfg.alpha1 : cfg.alpha2;
  const double p_single = tables.p_rel_single[i];
  const double p_both = tables.p_rel_both[i];
  return (1.0 - p_other_empty) *
             (ai * (1.0 - aj) * p_single + ai * aj * p_both) +
         p_other_empty * ai * p_single;
}

bool StabilityRegion::contains(double lambda1, double lambda2) const {
  auto in_sub = [&](int i) {
    const double li = i == 0 ? lambda1 : lambda2;
    const double lj = i == 0 ? lambda2 : lambda1;
    return li < r[i].intercept - r[i].slope * lj && lj < r[i].cap;
  };
  return in_sub(0) || in_sub(1);
}

double StabilityRegion::max_lambda1(double lambda2) const {
  double best = 0.0;
  if (lambda2 < r[0].cap)
    best = std::max(best, r[0].intercept - r[0].slope * lambda2);
  // In R2, lambda1 is the "other" coordinate: lambda1 < cap and
  // lambda2 < intercept - slope * lambda1.
  if (r[1].slope > 0.0) {
    const double from_line = (r[1].intercept - lambda2) / r[1].slope;
    if (from_line > 0.0) best = std::max(best, std::min(from_line, r[1].cap));
  } else if (lambda2 < r[1].intercept) {
    best = std::max(best, r[1].cap);
  }
  return std::max(best, 0.0);
}

StabilityRegion stability_region(const NetworkConfig& cfg,
                                 const SuccessTables& tables) {
  StabilityRegion reg;
  const std::array<double, 2> alpha{cfg.alpha1, cfg.alpha2};
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    const double pi = tables.p_rel_single[i];
    const double pj = tables.p_rel_single[j];
    const double qi = tables.p_rel_both[i];
    const double qj = tables.p_rel_both[j];
    const double cap_j =
        alpha[j] * (1.0 - alpha[i]) * pj + alpha[i] * alpha[j] * qj;
    reg.r[i].intercept = alpha[i] * pi;
    reg.r[i].slope =
        cap_j > 0.0 ? alpha[i] * alpha[j] * (pi - qi) / cap_j : 0.0;
    reg.r[i].cap = cap_j;
  }
  return reg;
}

bool is_stable(double lambda1, double lambda2, const NetworkConfig& cfg,
               const SuccessTables& tables) {
  if (lambda1 < 0.0 || lambda2 < 0.0)
    throw ConfigError("arrival rates must be non-negative");
  if (lambda1 == 0.0 && lambda2 == 0.0) return true;
  return stability_region(cfg, tables).contains(lambda1, lambda2);
}

std::vector<FrontierPoint> region_closure(const NetworkConfig& cfg,
                                          const SuccessTables& tables,
                                          int alpha_grid_resolution) {
  if (alpha_grid_resolution < 1)
    throw ConfigError("alpha grid resolution must be >= 1");
  const int n = alpha_grid_resolution;

  // Sample max lambda1 over a lambda2 grid for every (alpha1, alpha2); the
  // pointwise max over the alpha grid is the sampled closure frontier.
  const int n_l2 = 201;
  double cap2_max = 0.0;
  for (int a = 1; a <= n; ++a) {
    NetworkConfig c = cfg;
    c.alpha2 = static_cast<double>(a) / n;
    c.alpha1 = 0.0;
    cap2_max = std::max(cap2_max, c.alpha2 * tables.p_rel_single[1]);
  }

  std::vector<FrontierPoint> frontier(n_l2);
  for (int k = 0; k < n_l2; ++k) {
    const double l2 = cap2_max * k / (n_l2 - 1);
    double best = 0.0;
    for (int a1 = 0; a1 <= n; ++a1) {
      for (int a2 = 0; a2 <= n; ++a2) {
        NetworkConfig c = cfg;
        c.alpha1 = static_cast<double>(a1) / n;
        c.alpha2 = static_cast<double>(a2) / n;
        best = std::max(best,
                        stability_region(c, tables).max_lambda1(l2));
      }
    }
    frontier[k] = {best, l2};
  }
  return frontier;
}

bool closure_contains(double lambda1, double lambda2, const NetworkConfig& cfg,
                      const SuccessTables& tables, int alpha_grid_resolution) {
  const int n = alpha_grid_resolution;
  for (int a1 = 0; a1 <= n; ++a1) {
    for (int a2 = 0; a2 <= n; ++a2) {
      NetworkConfig c = cfg;
      c.alpha1 = static_cast<double>(a1) / n;
      c.alpha2 = static_cast<double>(a2) / n;
      if (stability_region(c, tables).contains(lambda1, lambda2)) return true;
    }
  }
  return false;
}

std::vector<bool> classify_sensor_counts(const NetworkConfig& cfg_template,
                                         double gamma, double t, int m_max) {
  std::vector<bool> labels;
  labels.reserve(m_max);
  for (int m = 1; m <= m_max; ++m) {
    NetworkConfig cfg = cfg_template;
    cfg.m1 = cfg.m2 = m;
    cfg.t1 = cfg.t2 = t;
    cfg.channel.sinr_threshold = gamma;
    const SuccessTables tb = build_tables(cfg);
    const double l1 = arrival_rate(0, cfg, tb);
    const double l2 = arrival_rate(1, cfg, tb);
    labels.push_back(is_stable(l1, l2, cfg, tb));
  }
  return labels;
}

}  // namespace aggrnet
