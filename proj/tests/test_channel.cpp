#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "aggrnet/channel.hpp"
#include "aggrnet/tables.hpp"
#include "doctest.h"

using namespace aggrnet;

namespace {

LinkGeometry sensor_sink() { return {130.0, 1e-3, 4.0, 1.0}; }
LinkGeometry sensor_agg() { return {60.0, 1e-3, 4.0, 1.0}; }
LinkGeometry agg_sink() { return {80.0, 1e-2, 4.0, 1.0}; }

}  // namespace

TEST_CASE("received power factor: value and monotonicity") {
  const double h = received_power_factor(sensor_sink());
  CHECK(h == doctest::Approx(1e-3 / std::pow(130.0, 4.0)).epsilon(1e-12));
  LinkGeometry nearer = sensor_sink();
  nearer.distance = 100.0;
  CHECK(received_power_factor(nearer) > h);
  LinkGeometry weaker = sensor_sink();
  weaker.tx_power = 5e-4;
  CHECK(received_power_factor(weaker) < h);
}

TEST_CASE("marginal success: closed form against hand computation") {
  ChannelParams ch{0.5, 0.0};
  // No interference, no noise: certain success.
  CHECK(marginal_success(sensor_sink(), {}, ch) == doctest::Approx(1.0));

  // One interferer, eta = 0: 1 / (1 + gamma h_k / h).
  const double h = received_power_factor(sensor_sink());
  const double hk = received_power_factor(sensor_agg());
  CHECK(marginal_success(sensor_sink(), {sensor_agg()}, ch) ==
        doctest::Approx(1.0 / (1.0 + 0.5 * hk / h)).epsilon(1e-12));

  // Noise only: exp(-gamma eta / h).
  ChannelParams noisy{0.5, 1e-12};
  CHECK(marginal_success(sensor_sink(), {}, noisy) ==
        doctest::Approx(std::exp(-0.5 * 1e-12 / h)).epsilon(1e-12));

  // Product form with two interferers.
  CHECK(marginal_success(sensor_sink(), {sensor_agg(), agg_sink()}, noisy) ==
        doctest::Approx(std::exp(-0.5 * 1e-12 / h) /
                        ((1.0 + 0.5 * hk / h) *
                         (1.0 + 0.5 * received_power_factor(agg_sink()) / h)))
            .epsilon(1e-12));
}

TEST_CASE("marginal success: more interference never helps") {
  ChannelParams ch{1.2, 1e-12};
  double prev = marginal_success(sensor_sink(), {}, ch);
  std::vector<LinkGeometry> interf;
  for (int k = 0; k < 5; ++k) {
    interf.push_back(sensor_sink());
    const double cur = marginal_success(sensor_sink(), interf, ch);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("joint two-transmitter outcome: structural invariants") {
  for (double gamma : {0.2, 0.5, 0.9, 1.2, 2.0}) {
    for (double eta : {0.0, 1e-12, 1e-11}) {
      CAPTURE(gamma);
      CAPTURE(eta);
      ChannelParams ch{gamma, eta};
      const JointTwoTx j = joint_two_tx(sensor_sink(), sensor_sink(), ch);
      CHECK(j.p_both >= 0.0);
      CHECK(j.p_only_a >= 0.0);
      CHECK(j.p_only_b >= 0.0);
      CHECK(j.p_neither >= 0.0);
      CHECK(j.p_both + j.p_only_a + j.p_only_b + j.p_neither ==
            doctest::Approx(1.0).epsilon(1e-12));
      // Marginal consistency against the product-form marginal.
      const double ma =
          marginal_success(sensor_sink(), {sensor_sink()}, ch);
      CHECK(j.p_both + j.p_only_a == doctest::Approx(ma).epsilon(1e-10));
      CHECK(j.p_both + j.p_only_b == doctest::Approx(ma).epsilon(1e-10));
      // Symmetric links: symmetric outcome split.
      CHECK(j.p_only_a == doctest::Approx(j.p_only_b).epsilon(1e-12));
      // No multi-packet reception at or above gamma = 1.
      if (gamma >= 1.0) CHECK(j.p_both == 0.0);
    }
  }
}

TEST_CASE("joint two-transmitter outcome: asymmetric links vs Monte Carlo") {
  for (double gamma : {0.5, 0.8, 1.2}) {
    for (double eta : {0.0, 1e-11}) {
      CAPTURE(gamma);
      CAPTURE(eta);
      ChannelParams ch{gamma, eta};
      const JointTwoTx j = joint_two_tx(sensor_sink(), agg_sink(), ch);
      const JointTwoTx mc =
          joint_two_tx_mc(sensor_sink(), agg_sink(), ch, 2000000, 99);
      // 2e6 samples: binomial standard error <= ~3.6e-4; allow 4 sigma.
      const double tol = 4.0 * 3.6e-4;
      CHECK(std::abs(j.p_both - mc.p_both) < tol);
      CHECK(std::abs(j.p_only_a - mc.p_only_a) < tol);
      CHECK(std::abs(j.p_only_b - mc.p_only_b) < tol);
      CHECK(std::abs(j.p_neither - mc.p_neither) < tol);
    }
  }
}

TEST_CASE("success tables: monotonicity and joint consistency") {
  NetworkConfig cfg;
  cfg.m1 = 4;
  cfg.m2 = 3;
  cfg.channel.sinr_threshold = 0.5;
  cfg.channel.noise_power = 1e-11;
  const SuccessTables tb = build_tables(cfg);
  for (int a = 0; a < 2; ++a) {
    const int m = a == 0 ? cfg.m1 : cfg.m2;
    for (int i = 2; i <= m; ++i)
      CHECK(tb.p_agg_at(a, i) <= tb.p_agg_at(a, i - 1));
  }
  for (int i = 1; i <= cfg.m1; ++i)
    for (int j = 0; j <= cfg.m2; ++j) {
      if (i >= 2) CHECK(tb.p_dir_at(0, i, j) <= tb.p_dir_at(0, i - 1, j));
      if (j >= 1) CHECK(tb.p_dir_at(0, i, j) <= tb.p_dir_at(0, i, j - 1));
    }
  // joint2 marginal consistency at the sink.
  CHECK(tb.joint2_sink.p_both + tb.joint2_sink.p_only_a ==
        doctest::Approx(tb.p_dir_at(0, 1, 1)).epsilon(1e-10));
  // Relay marginals.
  CHECK(tb.p_rel_both[0] <= tb.p_rel_single[0]);
  CHECK(tb.joint2_rel.p_both ==
        doctest::Approx(tb.p_rel_joint).epsilon(1e-12));
  CHECK(tb.joint2_rel.p_both + tb.joint2_rel.p_only_a ==
        doctest::Approx(tb.p_rel_both[0]).epsilon(1e-10));
}

TEST_CASE("validation rejects bad parameters") {
  const LinkGeometry bad_distance{-1.0, 1e-3, 4.0, 1.0};
  CHECK_THROWS_AS(bad_distance.validate(), ConfigError);
  const LinkGeometry bad_power{10.0, 0.0, 4.0, 1.0};
  CHECK_THROWS_AS(bad_power.validate(), ConfigError);
  const ChannelParams bad_gamma{0.0, 0.0};
  CHECK_THROWS_AS(bad_gamma.validate(), ConfigError);
  const ChannelParams bad_eta{1.0, -1e-12};
  CHECK_THROWS_AS(bad_eta.validate(), ConfigError);
  NetworkConfig cfg;
  cfg.t1 = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
