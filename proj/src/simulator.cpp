#include "aggrnet/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "aggrnet/channel.hpp"
#include "aggrnet/rng.hpp"

namespace aggrnet {

namespace {

// Purpose tags for the counter-based generator; entity index in the low bits.
enum Tag : std::uint64_t {
  kTagSensorTx = 1ULL << 32,
  kTagSensorSink = 2ULL << 32,
  kTagSensorCapture = 3ULL << 32,
  kTagJointSink = 4ULL << 32,
  kTagAggTx = 5ULL << 32,
  kTagRelay = 6ULL << 32,
  kTagFadeSink = 7ULL << 32,
  kTagFadeAgg = 8ULL << 32,
  kTagFadeRel = 9ULL << 32,
};

struct RepResult {
  std::array<double, 2> t_direct{}, t_relayed{}, lambda_hat{};
  std::array<std::vector<double>, 2> arrival_pmf;
  std::array<double, 2> mu_hat{}, mean_queue{}, mean_sojourn{}, p_empty{};
  double p_both_busy = 0.0;
  double slope = 0.0, slope_stderr = 0.0;
  std::int64_t max_queue = 0;
  std::array<std::int64_t, 2> arrivals_total{}, departures_total{},
      final_queue{};
  std::int64_t slots_measured = 0;
  std::vector<std::array<std::int64_t, 2>> trace;
};

// Accumulates a simple OLS y = a + b*x fit with classical slope stderr.
struct SlopeFit {
  double n = 0, sx = 0, sxx = 0, sy = 0, sxy = 0, syy = 0;
  void add(double x, double y) {
    n += 1;
    sx += x;
    sxx += x * x;
    sy += y;
    sxy += x * y;
    syy += y * y;
  }
  void finish(double* slope, double* stderr_out) const {
    if (n < 3) {
      *slope = 0.0;
      *stderr_out = 0.0;
      return;
    }
    const double sxx_c = sxx - sx * sx / n;
    const double sxy_c = sxy - sx * sy / n;
    const double syy_c = syy - sy * sy / n;
    if (sxx_c <= 0.0) {
      *slope = 0.0;
      *stderr_out = 0.0;
      return;
    }
    const double b = sxy_c / sxx_c;
    const double sse = std::max(syy_c - b * sxy_c, 0.0);
    *slope = b;
    *stderr_out = std::sqrt(sse / (n - 2) / sxx_c);
  }
};

RepResult run_replication(const NetworkConfig& cfg, const SuccessTables& tb,
                          const SimConfig& sim, int replication) {
  const CounterRng rng(sim.seed, static_cast<std::uint64_t>(replication));
  const int m1 = cfg.m1, m2 = cfg.m2, n_sensors = m1 + m2;
  const std::array<double, 2> t{cfg.t1, cfg.t2};
  const std::array<double, 2> alpha{cfg.alpha1, cfg.alpha2};
  const std::int64_t warmup = sim.effective_warmup();

  const std::array<double, 2> h_sink{
      received_power_factor(cfg.sensor_to_sink[0]),
      received_power_factor(cfg.sensor_to_sink[1])};
  const std::array<double, 2> h_agg{
      received_power_factor(cfg.sensor_to_agg[0]),
      received_power_factor(cfg.sensor_to_agg[1])};
  const std::array<double, 2> h_rel{
      received_power_factor(cfg.agg_to_sink[0]),
      received_power_factor(cfg.agg_to_sink[1])};
  const double gamma = cfg.channel.sinr_threshold;
  const double eta = cfg.channel.noise_power;

  std::array<std::deque<std::int64_t>, 2> queue;  // arrival slots, FIFO
  RepResult out;
  for (int a = 0; a < 2; ++a)
    out.arrival_pmf[a].assign((a == 0 ? m1 : m2) + 1, 0.0);
  std::array<std::int64_t, 2> busy_slots{}, empty_slots{};
  std::array<std::int64_t, 2> direct_successes{}, captures{},
      measured_departures{};
  std::array<double, 2> sojourn_sum{};
  std::int64_t both_busy = 0;
  SlopeFit fit;
  if (sim.keep_trace && replication == 0)
    out.trace.reserve(static_cast<std::size_t>(sim.slots));

  std::vector<bool> tx(n_sensors);
  std::vector<bool> sink_ok(n_sensors);
  std::vector<double> fade_sink(n_sensors), fade_agg(n_sensors);

  for (std::int64_t slot = 0; slot < sim.slots; ++slot) {
    const std::uint64_t ctr = static_cast<std::uint64_t>(slot);
    const std::array<std::int64_t, 2> q0{
        static_cast<std::int64_t>(queue[0].size()),
        static_cast<std::int64_t>(queue[1].size())};
    const bool measured = slot >= warmup;
    if (sim.keep_trace && replication == 0) out.trace.push_back({q0[0], q0[1]});

    if (measured) {
      ++out.slots_measured;
      for (int a = 0; a < 2; ++a) {
        out.mean_queue[a] += static_cast<double>(q0[a]);
        if (q0[a] == 0)
          ++empty_slots[a];
        else
          ++busy_slots[a];
      }
      if (q0[0] > 0 && q0[1] > 0) ++both_busy;
    }
    if (slot >= sim.slots / 2)
      fit.add(static_cast<double>(slot), static_cast<double>(q0[0] + q0[1]));
    out.max_queue = std::max(out.max_queue, std::max(q0[0], q0[1]));

    // --- Sensor phase -----------------------------------------------------
    int cnt1 = 0, cnt2 = 0;
    for (int s = 0; s < n_sensors; ++s) {
      const int area = s < m1 ? 0 : 1;
      tx[s] = rng.bernoulli(t[area], ctr, kTagSensorTx | s);
      if (tx[s]) (area == 0 ? cnt1 : cnt2)++;
    }

    if (sim.mode == SimMode::kIndependentSuccess) {
      if (cnt1 == 1 && cnt2 == 1) {
        // Exactly one transmitter per area: use the joint sink outcome so the
        // cross-aggregator arrival correlation matches the analysis.
        const double u = rng.u01(ctr, kTagJointSink);
        const JointTwoTx& j = tb.joint2_sink;
        const bool a_ok = u < j.p_both || (u >= j.p_both + j.p_only_b &&
                                           u < j.p_both + j.p_only_b + j.p_only_a);
        const bool b_ok = u < j.p_both + j.p_only_b;
        for (int s = 0; s < n_sensors; ++s)
          if (tx[s]) sink_ok[s] = s < m1 ? a_ok : b_ok;
      } else {
        for (int s = 0; s < n_sensors; ++s) {
          if (!tx[s]) continue;
          const int area = s < m1 ? 0 : 1;
          sink_ok[s] = rng.bernoulli(tb.p_dir_at(area, cnt1, cnt2), ctr,
                                     kTagSensorSink | s);
        }
      }
    } else {
      // Full-SINR: draw one sink fade per transmitting sensor, joint SINRs.
      double total = 0.0;
      for (int s = 0; s < n_sensors; ++s) {
        if (!tx[s]) continue;
        const int area = s < m1 ? 0 : 1;
        fade_sink[s] = rng.exponential(ctr, kTagFadeSink | s);
        total += h_sink[area] * fade_sink[s];
      }
      for (int s = 0; s < n_sensors; ++s) {
        if (!tx[s]) continue;
        const int area = s < m1 ? 0 : 1;
        const double sig = h_sink[area] * fade_sink[s];
        sink_ok[s] = sig >= gamma * (eta + total - sig);
      }
    }

    // Captures at aggregators (same-area interference only).
    std::array<int, 2> new_arrivals{};
    std::array<double, 2> agg_intf{};
    if (sim.mode == SimMode::kFullSinr) {
      // Every transmitter (even one that reached the sink) interferes at its
      // area's aggregator; fades toward the two receivers are independent.
      for (int s = 0; s < n_sensors; ++s) {
        if (!tx[s]) continue;
        const int area = s < m1 ? 0 : 1;
        fade_agg[s] = rng.exponential(ctr, kTagFadeAgg | s);
        agg_intf[area] += h_agg[area] * fade_agg[s];
      }
    }
    for (int s = 0; s < n_sensors; ++s) {
      if (!tx[s]) continue;
      const int area = s < m1 ? 0 : 1;
      if (measured) direct_successes[area] += sink_ok[s] ? 1 : 0;
      if (sink_ok[s]) continue;
      bool captured;
      if (sim.mode == SimMode::kIndependentSuccess) {
        const int own = area == 0 ? cnt1 : cnt2;
        captured =
            rng.bernoulli(tb.p_agg_at(area, own), ctr, kTagSensorCapture | s);
      } else {
        const double sig = h_agg[area] * fade_agg[s];
        captured = sig >= gamma * (eta + agg_intf[area] - sig);
      }
      if (captured) ++new_arrivals[area];
    }

    // --- Aggregator (service) phase --------------------------------------
    std::array<bool, 2> saturated{
        sim.dominant == DominantMode::kQueue1Saturated,
        sim.dominant == DominantMode::kQueue2Saturated};
    std::array<bool, 2> active{};
    for (int a = 0; a < 2; ++a)
      active[a] = (q0[a] > 0 || saturated[a]) &&
                  rng.bernoulli(alpha[a], ctr, kTagAggTx | a);

    std::array<bool, 2> delivered{};
    if (active[0] && active[1]) {
      if (sim.mode == SimMode::kIndependentSuccess) {
        // Conditional coupling: marginals and joint match joint2_rel while
        // success remains monotone versus the single-transmitter outcome.
        const double u1 = rng.u01(ctr, kTagRelay | 0);
        const double u2 = rng.u01(ctr, kTagRelay | 1);
        delivered[0] = u1 < tb.p_rel_both[0];
        const double cond = delivered[0]
                                ? tb.p_rel_joint / tb.p_rel_both[0]
                                : tb.joint2_rel.p_only_b /
                                      (1.0 - tb.p_rel_both[0]);
        delivered[1] = u2 < cond;
      } else {
        const double f1 = rng.exponential(ctr, kTagFadeRel | 0);
        const double f2 = rng.exponential(ctr, kTagFadeRel | 1);
        delivered[0] = h_rel[0] * f1 >= gamma * (eta + h_rel[1] * f2);
        delivered[1] = h_rel[1] * f2 >= gamma * (eta + h_rel[0] * f1);
      }
    } else {
      for (int a = 0; a < 2; ++a) {
        if (!active[a]) continue;
        if (sim.mode == SimMode::kIndependentSuccess) {
          delivered[a] =
              rng.u01(ctr, kTagRelay | a) < tb.p_rel_single[a];
        } else {
          delivered[a] =
              h_rel[a] * rng.exponential(ctr, kTagFadeRel | a) >= gamma * eta;
        }
      }
    }

    for (int a = 0; a < 2; ++a) {
      if (delivered[a] && q0[a] > 0) {
        const std::int64_t arrived = queue[a].front();
        queue[a].pop_front();
        ++out.departures_total[a];
        if (measured) {
          ++measured_departures[a];
          sojourn_sum[a] += static_cast<double>(slot - arrived);
        }
      }
    }

    // --- Arrivals join after service --------------------------------------
    for (int a = 0; a < 2; ++a) {
      for (int k = 0; k < new_arrivals[a]; ++k) queue[a].push_back(slot);
      out.arrivals_total[a] += new_arrivals[a];
      if (measured) {
        captures[a] += new_arrivals[a];
        out.arrival_pmf[a][new_arrivals[a]] += 1.0;
      }
      if (static_cast<std::int64_t>(queue[a].size()) > sim.queue_cap)
        throw InstabilityError(
            "simulated queue exceeded the configured cap; the operating point "
            "appears unstable");
    }
  }

  const double n = static_cast<double>(std::max<std::int64_t>(out.slots_measured, 1));
  for (int a = 0; a < 2; ++a) {
    const int m = a == 0 ? m1 : m2;
    out.t_direct[a] = m > 0 ? direct_successes[a] / (n * m) : 0.0;
    out.t_relayed[a] = m > 0 ? captures[a] / (n * m) : 0.0;
    out.lambda_hat[a] = captures[a] / n;
    for (double& bin : out.arrival_pmf[a]) bin /= n;
    out.mean_queue[a] /= n;
    out.p_empty[a] = empty_slots[a] / n;
    out.mu_hat[a] =
        busy_slots[a] > 0
            ? static_cast<double>(measured_departures[a]) / busy_slots[a]
            : 0.0;
    out.mean_sojourn[a] =
        measured_departures[a] > 0 ? sojourn_sum[a] / measured_departures[a]
                                   : 0.0;
    out.final_queue[a] = static_cast<std::int64_t>(queue[a].size());
  }
  out.p_both_busy = both_busy / n;
  fit.finish(&out.slope, &out.slope_stderr);
  return out;
}

}  // namespace

void SimConfig::validate() const {
  if (slots < 1) throw ConfigError("slots must be >= 1");
  if (effective_warmup() >= slots)
    throw ConfigError("warmup must be smaller than slots");
  if (replications < 1) throw ConfigError("replications must be >= 1");
  if (queue_cap < 1) throw ConfigError("queue cap must be >= 1");
}

SimStats run(const NetworkConfig& cfg, const SuccessTables& tables,
             const SimConfig& sim) {
  cfg.validate();
  sim.validate();

  std::vector<RepResult> reps;
  reps.reserve(sim.replications);
  for (int r = 0; r < sim.replications; ++r)
    reps.push_back(run_replication(cfg, tables, sim, r));

  SimStats st;
  st.replications = sim.replications;
  st.slots_measured = reps[0].slots_measured;
  st.arrivals_total = reps[0].arrivals_total;
  st.departures_total = reps[0].departures_total;
  st.final_queue = reps[0].final_queue;
  st.trace = std::move(reps[0].trace);
  st.slope = reps[0].slope;
  st.slope_stderr = reps[0].slope_stderr;
  for (const RepResult& r : reps)
    st.max_queue = std::max(st.max_queue, r.max_queue);

  const double nr = static_cast<double>(sim.replications);
  auto reduce = [&](auto getter, double* mean, double* se) {
    double s = 0.0, s2 = 0.0;
    for (const RepResult& r : reps) {
      const double v = getter(r);
      s += v;
      s2 += v * v;
    }
    *mean = s / nr;
    *se = sim.replications > 1
              ? std::sqrt(std::max(s2 / nr - (s / nr) * (s / nr), 0.0) /
                          (nr - 1.0))
              : 0.0;
  };

  for (int a = 0; a < 2; ++a) {
    reduce([&](const RepResult& r) { return r.t_direct[a]; }, &st.t_direct[a],
           &st.t_direct_se[a]);
    reduce([&](const RepResult& r) { return r.t_relayed[a]; },
           &st.t_relayed[a], &st.t_relayed_se[a]);
    reduce([&](const RepResult& r) { return r.lambda_hat[a]; },
           &st.lambda_hat[a], &st.lambda_hat_se[a]);
    reduce([&](const RepResult& r) { return r.mu_hat[a]; }, &st.mu_hat[a],
           &st.mu_hat_se[a]);
    reduce([&](const RepResult& r) { return r.mean_queue[a]; },
           &st.mean_queue[a], &st.mean_queue_se[a]);
    reduce([&](const RepResult& r) { return r.mean_sojourn[a]; },
           &st.mean_sojourn[a], &st.mean_sojourn_se[a]);
    reduce([&](const RepResult& r) { return r.p_empty[a]; }, &st.p_empty[a],
           &st.p_empty_se[a]);
    st.arrival_pmf[a].assign(reps[0].arrival_pmf[a].size(), 0.0);
    for (const RepResult& r : reps)
      for (std::size_t k = 0; k < st.arrival_pmf[a].size(); ++k)
        st.arrival_pmf[a][k] += r.arrival_pmf[a][k] / nr;
  }
  reduce([&](const RepResult& r) { return r.p_both_busy; }, &st.p_both_busy,
         &st.p_both_busy_se);
  return st;
}

Stability estimate_stability(const SimStats& stats) {
  if (stats.slope > 10.0 * stats.slope_stderr && stats.slope > 0.0)
    return Stability::kUnstable;
  const double limit =
      std::sqrt(static_cast<double>(std::max<std::int64_t>(
          stats.slots_measured, 1)));
  if (std::abs(stats.slope) <= 2.0 * stats.slope_stderr &&
      static_cast<double>(stats.max_queue) < limit)
    return Stability::kStable;
  return Stability::kInconclusive;
}

SimStats dominant_run(const NetworkConfig& cfg, const SuccessTables& tables,
                      const SimConfig& sim, DominantMode mode) {
  SimConfig s = sim;
  s.dominant = mode;
  return run(cfg, tables, s);
}

}  // namespace aggrnet
