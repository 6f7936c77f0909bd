#include "aggrnet/throughput.hpp"

#include <cmath>

namespace aggrnet {

namespace {

// Sums f(i, j, weight) over the transmit-count distribution, where i is the
// number of *other* same-area transmitters (the tagged sensor transmits with
// probability t_own as the (i+1)-th) and j counts other-area transmitters.
template <typename F>
double tagged_sum(int area, const NetworkConfig& cfg, F&& f) {
  const int m_own = area == 0 ? cfg.m1 : cfg.m2;
  const int m_other = area == 0 ? cfg.m2 : cfg.m1;
  const double t_own = area == 0 ? cfg.t1 : cfg.t2;
  const double t_other = area == 0 ? cfg.t2 : cfg.t1;
  if (m_own == 0 || t_own == 0.0) return 0.0;

  double total = 0.0;
  for (int i = 0; i <= m_own - 1; ++i) {
    const double wi = binom_pmf(m_own - 1, i, t_own) * t_own;
    if (wi == 0.0) continue;
    for (int j = 0; j <= m_other; ++j) {
      const double w = wi * binom_pmf(m_other, j, t_other);
      if (w == 0.0) continue;
      total += f(i, j, w);
    }
  }
  return total;
}

double p_dir_tagged(int area, const SuccessTables& tb, int own_tx, int other_tx) {
  return area == 0 ? tb.p_dir_at(0, own_tx, other_tx)
                   : tb.p_dir_at(1, other_tx, own_tx);
}

}  // namespace

double direct_throughput(int area, const NetworkConfig& cfg,
                         const SuccessTables& tables) {
  return tagged_sum(area, cfg, [&](int i, int j, double w) {
    return w * p_dir_tagged(area, tables, i + 1, j);
  });
}

double relayed_throughput(int area, const NetworkConfig& cfg,
                          const SuccessTables& tables) {
  return tagged_sum(area, cfg, [&](int i, int j, double w) {
    const double p_d = p_dir_tagged(area, tables, i + 1, j);
    return w * (1.0 - p_d) * tables.p_agg_at(area, i + 1);
  });
}

std::vector<double> arrival_pmf(int area, const NetworkConfig& cfg,
                                const SuccessTables& tables) {
  const int m_own = area == 0 ? cfg.m1 : cfg.m2;
  const int m_other = area == 0 ? cfg.m2 : cfg.m1;
  const double t_own = area == 0 ? cfg.t1 : cfg.t2;
  const double t_other = area == 0 ? cfg.t2 : cfg.t1;

  std::vector<double> pmf(m_own + 1, 0.0);
  if (m_own == 0) {
    pmf[0] = 1.0;
    return pmf;
  }
  // l_{k}: k of the s same-area transmitters fail toward the sink but are
  // captured by the aggregator; each of the remaining s-k either reached the
  // sink or failed both hops.
  double tail = 0.0;
  for (int k = 1; k <= m_own; ++k) {
    double lk = 0.0;
    for (int s = k; s <= m_own; ++s) {
      const double ws = binom_pmf(m_own, s, t_own);
      if (ws == 0.0) continue;
      const double log_choose = log_binomial(s, k);
      for (int mo = 0; mo <= m_other; ++mo) {
        const double w = ws * binom_pmf(m_other, mo, t_other);
        if (w == 0.0) continue;
        const double p_d = p_dir_tagged(area, tables, s, mo);
        const double p_r = tables.p_agg_at(area, s);
        const double p_arrive = (1.0 - p_d) * p_r;
        const double p_not = p_d + (1.0 - p_d) * (1.0 - p_r);
        // pow(0, 0) == 1, so the degenerate cases fall out naturally.
        lk += w * std::exp(log_choose) * std::pow(p_arrive, k) *
              std::pow(p_not, s - k);
      }
    }
    pmf[k] = lk;
    tail += lk;
  }
  if (tail > 1.0 + 1e-9)
    throw NumericError("arrival pmf tail exceeds 1; inconsistent tables");
  pmf[0] = 1.0 - tail;
  return pmf;
}

double arrival_rate(int area, const NetworkConfig& cfg,
                    const SuccessTables& tables) {
  const auto pmf = arrival_pmf(area, cfg, tables);
  double lambda = 0.0;
  for (std::size_t k = 1; k < pmf.size(); ++k) lambda += k * pmf[k];
  return lambda;
}

double relayed_fraction(int area, const NetworkConfig& cfg,
                        const SuccessTables& tables) {
  const double t_r = relayed_throughput(area, cfg, tables);
  const double t_tot = direct_throughput(area, cfg, tables) + t_r;
  return t_tot > 0.0 ? t_r / t_tot : 0.0;
}

double network_throughput(const NetworkConfig& cfg, const SuccessTables& tables,
                          std::array<bool, 2> stable,
                          std::array<std::optional<double>, 2> mu) {
  double total = 0.0;
  for (int area = 0; area < 2; ++area) {
    const int m = area == 0 ? cfg.m1 : cfg.m2;
    const double t_d = direct_throughput(area, cfg, tables);
    if (stable[area]) {
      total += m * (t_d + relayed_throughput(area, cfg, tables));
    } else {
      if (!mu[area])
        throw ConfigError("unstable queue requires its service rate mu");
      total += m * t_d + *mu[area];
    }
  }
  return total;
}

ThroughputReport throughput_report(const NetworkConfig& cfg,
                                   const SuccessTables& tables) {
  ThroughputReport rep;
  for (int area = 0; area < 2; ++area) {
    rep.t_direct[area] = direct_throughput(area, cfg, tables);
    rep.t_relayed[area] = relayed_throughput(area, cfg, tables);
    rep.t_total[area] = rep.t_direct[area] + rep.t_relayed[area];
    rep.relayed_fraction[area] =
        rep.t_total[area] > 0.0 ? rep.t_relayed[area] / rep.t_total[area] : 0.0;
    rep.arrival_pmf[area] = arrival_pmf(area, cfg, tables);
    rep.lambda[area] = 0.0;
    for (std::size_t k = 1; k < rep.arrival_pmf[area].size(); ++k)
      rep.lambda[area] += k * rep.arrival_pmf[area][k];
  }
  rep.network_total =
      cfg.m1 * rep.t_total[0] + cfg.m2 * rep.t_total[1];
  return rep;
}

}  // namespace aggrnet
