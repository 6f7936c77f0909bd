#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "aggrnet/delay_sym.hpp"
#include "aggrnet/simulator.hpp"
#include "aggrnet/stability.hpp"
#include "aggrnet/throughput.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace aggrnet;

namespace {

NetworkConfig make_cfg(int m1, int m2, double t, double gamma) {
  NetworkConfig cfg;
  cfg.m1 = m1;
  cfg.m2 = m2;
  cfg.t1 = cfg.t2 = t;
  cfg.channel.sinr_threshold = gamma;
  cfg.channel.noise_power = testing::kCalibratedEta;
  return cfg;
}

}  // namespace

TEST_CASE("determinism: identical seeds give identical statistics") {
  const NetworkConfig cfg = make_cfg(2, 2, 0.2, 1.2);
  const SuccessTables tb = build_tables(cfg);
  SimConfig sim;
  sim.slots = 50000;
  sim.seed = 3;
  const SimStats a = run(cfg, tb, sim);
  const SimStats b = run(cfg, tb, sim);
  CHECK(a.lambda_hat[0] == b.lambda_hat[0]);
  CHECK(a.mean_queue[1] == b.mean_queue[1]);
  CHECK(a.mean_sojourn[0] == b.mean_sojourn[0]);
  sim.seed = 4;
  const SimStats c = run(cfg, tb, sim);
  CHECK(a.lambda_hat[0] != c.lambda_hat[0]);
}

TEST_CASE("work conservation: arrivals = departures + backlog") {
  const NetworkConfig cfg = make_cfg(3, 2, 0.25, 1.2);
  const SuccessTables tb = build_tables(cfg);
  SimConfig sim;
  sim.slots = 100000;
  sim.seed = 17;
  const SimStats st = run(cfg, tb, sim);
  for (int a = 0; a < 2; ++a)
    CHECK(st.arrivals_total[a] ==
          st.departures_total[a] + st.final_queue[a]);
}

TEST_CASE("statistical agreement with the analysis (3 sigma)") {
  const NetworkConfig cfg = make_cfg(2, 2, 0.2, 1.2);
  const SuccessTables tb = build_tables(cfg);
  SimConfig sim;
  sim.slots = 1000000;
  sim.replications = 3;
  sim.seed = 5;
  const SimStats st = run(cfg, tb, sim);
  for (int a = 0; a < 2; ++a) {
    CAPTURE(a);
    CHECK(std::abs(st.t_direct[a] - direct_throughput(a, cfg, tb)) <
          3.0 * st.t_direct_se[a]);
    CHECK(std::abs(st.lambda_hat[a] - arrival_rate(a, cfg, tb)) <
          3.0 * st.lambda_hat_se[a]);
    CHECK(std::abs(st.t_relayed[a] - relayed_throughput(a, cfg, tb)) <
          3.0 * st.t_relayed_se[a] + 1e-4);
    const std::vector<double> pmf = arrival_pmf(a, cfg, tb);
    REQUIRE(st.arrival_pmf[a].size() >= pmf.size());
    for (std::size_t k = 0; k < pmf.size(); ++k) {
      CAPTURE(k);
      // Bin standard error ~ sqrt(p(1-p)/n).
      const double se = std::sqrt(pmf[k] * (1.0 - pmf[k]) /
                                  static_cast<double>(st.slots_measured));
      CHECK(std::abs(st.arrival_pmf[a][k] - pmf[k]) < 3.5 * se + 1e-6);
    }
  }
}

TEST_CASE("Little's law holds on measured quantities") {
  const NetworkConfig cfg = make_cfg(1, 1, 0.3, 1.2);
  const SuccessTables tb = build_tables(cfg);
  SimConfig sim;
  sim.slots = 500000;
  sim.seed = 11;
  const SimStats st = run(cfg, tb, sim);
  for (int a = 0; a < 2; ++a)
    CHECK(st.lambda_hat[a] * st.mean_sojourn[a] ==
          doctest::Approx(st.mean_queue[a]).epsilon(0.02));
}

TEST_CASE("symmetric delay: sojourn matches the closed-form exact value") {
  NetworkConfig cfg = make_cfg(1, 1, 0.3, 1.2);
  cfg.channel.noise_power = 0.0;
  const SuccessTables tb = build_tables(cfg);
  const SymmetricParams sp = make_symmetric_params(cfg, tb);
  const DelayBounds b = delay_bounds(sp);
  REQUIRE(b.exact.has_value());
  SimConfig sim;
  sim.slots = 2000000;
  sim.replications = 3;
  sim.seed = 42;
  const SimStats st = run(cfg, tb, sim);
  CHECK(std::abs(st.mean_sojourn[0] - *b.exact) <
        4.0 * st.mean_sojourn_se[0]);
}

TEST_CASE("dominant mode: saturated queue serves at the saturated rate") {
  const NetworkConfig cfg = make_cfg(1, 1, 0.2, 1.2);
  const SuccessTables tb = build_tables(cfg);
  SimConfig sim;
  sim.slots = 500000;
  sim.seed = 23;
  const SimStats st = dominant_run(cfg, tb, sim, DominantMode::kQueue2Saturated);
  // Queue 1 faces an always-busy queue 2, so its service rate is mu_sat.
  const double mu_sat = service_rate(0, cfg, tb, 0.0);
  CHECK(std::abs(st.mu_hat[0] - mu_sat) < 4.0 * st.mu_hat_se[0] + 3e-3);
}

TEST_CASE("pathwise dominance under coupled seeds") {
  // gamma = 1.2 (capture regime): saturating queue 2 can only slow queue 1.
  const NetworkConfig cfg = make_cfg(1, 1, 0.3, 1.2);
  const SuccessTables tb = build_tables(cfg);
  SimConfig sim;
  sim.slots = 200000;
  sim.seed = 31;
  sim.keep_trace = true;
  const SimStats base = run(cfg, tb, sim);
  const SimStats dom = dominant_run(cfg, tb, sim, DominantMode::kQueue2Saturated);
  REQUIRE(base.trace.size() == dom.trace.size());
  for (std::size_t s = 0; s < base.trace.size(); ++s) {
    if (dom.trace[s][0] < base.trace[s][0]) {
      CAPTURE(s);
      REQUIRE(dom.trace[s][0] >= base.trace[s][0]);
    }
  }
}

TEST_CASE("stability estimation on both sides of the boundary") {
  // Stable point: Table I gamma=1.2, t=0.2 is stable at M=2 per area.
  {
    const NetworkConfig cfg = make_cfg(2, 2, 0.2, 1.2);
    const SuccessTables tb = build_tables(cfg);
    SimConfig sim;
    sim.slots = 400000;
    sim.seed = 7;
    CHECK(estimate_stability(run(cfg, tb, sim)) == Stability::kStable);
  }
  // Deeply unstable point: M=10 per area at the same parameters.
  {
    const NetworkConfig cfg = make_cfg(10, 10, 0.2, 1.2);
    const SuccessTables tb = build_tables(cfg);
    REQUIRE_FALSE(is_stable(arrival_rate(0, cfg, tb), arrival_rate(1, cfg, tb),
                            cfg, tb));
    SimConfig sim;
    sim.slots = 400000;
    sim.seed = 7;
    CHECK(estimate_stability(run(cfg, tb, sim)) == Stability::kUnstable);
  }
}

TEST_CASE("full-SINR mode agrees with the independent-success analysis") {
  const NetworkConfig cfg = make_cfg(1, 1, 0.25, 1.2);
  const SuccessTables tb = build_tables(cfg);
  SimConfig sim;
  sim.slots = 1000000;
  sim.replications = 5;
  sim.seed = 13;
  sim.mode = SimMode::kFullSinr;
  const SimStats st = run(cfg, tb, sim);
  // The few-replication standard-error estimate is itself noisy, so keep a
  // small absolute floor alongside the 4-sigma band.
  for (int a = 0; a < 2; ++a) {
    CHECK(std::abs(st.t_direct[a] - direct_throughput(a, cfg, tb)) <
          4.0 * st.t_direct_se[a] + 5e-5);
    CHECK(std::abs(st.lambda_hat[a] - arrival_rate(a, cfg, tb)) <
          4.0 * st.lambda_hat_se[a] + 2e-4);
  }
}

TEST_CASE("queue cap aborts a runaway simulation") {
  const NetworkConfig cfg = make_cfg(10, 10, 0.3, 1.2);
  const SuccessTables tb = build_tables(cfg);
  SimConfig sim;
  sim.slots = 2000000;
  sim.seed = 1;
  sim.queue_cap = 2000;
  CHECK_THROWS_AS(run(cfg, tb, sim), InstabilityError);
}

TEST_CASE("config validation") {
  SimConfig sim;
  sim.slots = 0;
  CHECK_THROWS_AS(sim.validate(), ConfigError);
  sim.slots = 100;
  sim.warmup = 200;
  CHECK_THROWS_AS(sim.validate(), ConfigError);
  sim.warmup = -1;
  sim.replications = 0;
  CHECK_THROWS_AS(sim.validate(), ConfigError);
}
