#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

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

TEST_CASE("direct throughput / arrivals: exhaustive enumeration equality") {
  const std::array<std::array<int, 2>, 4> sizes{{{1, 1}, {2, 1}, {2, 2}, {3, 2}}};
  for (const auto& sz : sizes) {
    for (double gamma : {0.5, 1.2}) {
      CAPTURE(sz[0]);
      CAPTURE(sz[1]);
      CAPTURE(gamma);
      const NetworkConfig cfg = make_cfg(sz[0], sz[1], 0.2, gamma);
      const SuccessTables tb = build_tables(cfg);
      const testing::EnumerationResult ex = testing::enumerate_exact(cfg, tb);
      for (int a = 0; a < 2; ++a) {
        CHECK(direct_throughput(a, cfg, tb) ==
              doctest::Approx(ex.t_direct[a]).epsilon(1e-12));
        CHECK(arrival_rate(a, cfg, tb) ==
              doctest::Approx(ex.lambda[a]).epsilon(1e-12));
        const std::vector<double> pmf = arrival_pmf(a, cfg, tb);
        REQUIRE(pmf.size() == ex.arrival_pmf[a].size());
        for (std::size_t k = 0; k < pmf.size(); ++k)
          CHECK(pmf[k] == doctest::Approx(ex.arrival_pmf[a][k]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("arrival pmf is a probability distribution; lambda is its mean") {
  const NetworkConfig cfg = make_cfg(5, 4, 0.15, 1.2);
  const SuccessTables tb = build_tables(cfg);
  for (int a = 0; a < 2; ++a) {
    const std::vector<double> pmf = arrival_pmf(a, cfg, tb);
    double sum = 0.0, mean = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
      CHECK(pmf[k] >= 0.0);
      sum += pmf[k];
      mean += static_cast<double>(k) * pmf[k];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mean == doctest::Approx(arrival_rate(a, cfg, tb)).epsilon(1e-12));
  }
}

TEST_CASE("relayed throughput equals arrival rate per sensor for stable queues") {
  // In steady state every packet that enters an aggregator eventually leaves,
  // so the per-sensor relayed throughput is lambda / M.
  const NetworkConfig cfg = make_cfg(3, 3, 0.1, 1.2);
  const SuccessTables tb = build_tables(cfg);
  for (int a = 0; a < 2; ++a)
    CHECK(relayed_throughput(a, cfg, tb) ==
          doctest::Approx(arrival_rate(a, cfg, tb) / 3.0).epsilon(1e-12));
}

TEST_CASE("network throughput: stable vs unstable composition") {
  const NetworkConfig cfg = make_cfg(2, 2, 0.2, 1.2);
  const SuccessTables tb = build_tables(cfg);
  const ThroughputReport rep = throughput_report(cfg, tb);
  CHECK(rep.network_total ==
        doctest::Approx(2.0 * rep.t_total[0] + 2.0 * rep.t_total[1])
            .epsilon(1e-12));
  CHECK(network_throughput(cfg, tb, {true, true}) ==
        doctest::Approx(rep.network_total).epsilon(1e-12));

  // Unstable queue 2: its relayed contribution is replaced by mu2.
  const double mu2 = 0.3;
  const double expect = 2.0 * rep.t_total[0] + 2.0 * rep.t_direct[1] + mu2;
  CHECK(network_throughput(cfg, tb, {true, false}, {std::nullopt, mu2}) ==
        doctest::Approx(expect).epsilon(1e-12));
  // Missing mu for an unstable queue is a configuration error.
  CHECK_THROWS_AS(network_throughput(cfg, tb, {true, false}), ConfigError);
}

TEST_CASE("relayed fraction increases as the direct link degrades") {
  NetworkConfig cfg = make_cfg(2, 2, 0.1, 0.5);
  const double near = relayed_fraction(0, cfg, build_tables(cfg));
  cfg.sensor_to_sink[0].distance = 200.0;
  cfg.sensor_to_sink[1].distance = 200.0;
  const double far = relayed_fraction(0, cfg, build_tables(cfg));
  CHECK(far > near);
  CHECK(near > 0.0);
  CHECK(far < 1.0);
}
