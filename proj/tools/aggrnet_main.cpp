// aggrnet command-line tool: experiment runner, table dump, self-check.
//
// Exit codes: 0 success, 2 configuration error, 3 numeric non-convergence,
// 4 instability-regime mismatch.

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "aggrnet/bvp.hpp"
#include "aggrnet/delay_sym.hpp"
#include "aggrnet/scenarios.hpp"
#include "aggrnet/stability.hpp"
#include "aggrnet/throughput.hpp"

namespace {

using namespace aggrnet;

int cmd_run(const std::string& config_path, const std::string& scenario,
            const std::string& out_dir, long long seed_override, int threads) {
  ExperimentSpec spec = load_config(config_path);
  if (!scenario.empty()) spec.scenario = scenario;
  if (!out_dir.empty()) spec.out_dir = out_dir;
  if (seed_override >= 0) {
    spec.sim.seed = static_cast<std::uint64_t>(seed_override);
    spec.resolved["sim.seed"] = std::to_string(seed_override);
  }
  const auto files = run_experiment(spec, threads);
  for (const auto& f : files) std::cout << "wrote " << f << "\n";
  return 0;
}

int cmd_tables(const std::string& config_path) {
  const ExperimentSpec spec = load_config(config_path);
  const SuccessTables tb = build_tables(spec.network);
  std::cout << "kind,area,i,j,value\n";
  for (int a = 0; a < 2; ++a)
    for (std::size_t i = 1; i < tb.p_agg[a].size(); ++i)
      std::printf("p_agg,%d,%zu,,%.12g\n", a + 1, i, tb.p_agg[a][i]);
  for (int a = 0; a < 2; ++a)
    for (std::size_t i = 0; i < tb.p_dir[a].size(); ++i)
      for (std::size_t j = 0; j < tb.p_dir[a][i].size(); ++j)
        if ((a == 0 ? i : j) > 0)
          std::printf("p_dir,%d,%zu,%zu,%.12g\n", a + 1, i, j,
                      tb.p_dir[a][i][j]);
  for (int a = 0; a < 2; ++a)
    std::printf("p_rel_single,%d,,,%.12g\n", a + 1, tb.p_rel_single[a]);
  for (int a = 0; a < 2; ++a)
    std::printf("p_rel_both,%d,,,%.12g\n", a + 1, tb.p_rel_both[a]);
  std::printf("p_rel_joint,,,,%.12g\n", tb.p_rel_joint);
  std::printf("joint2_sink_both,,,,%.12g\n", tb.joint2_sink.p_both);
  std::printf("joint2_sink_neither,,,,%.12g\n", tb.joint2_sink.p_neither);
  return 0;
}

int check_one(const char* name, bool ok, int* failures) {
  std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "\n";
  if (!ok) ++*failures;
  return ok ? 0 : 1;
}

int cmd_check() {
  int failures = 0;
  NetworkConfig cfg;  // reference symmetric geometry
  cfg.channel.sinr_threshold = 1.2;
  const SuccessTables tb = build_tables(cfg);

  // With eta = 0 an uncontended link succeeds with probability exactly 1.
  check_one("tables: probabilities in range",
            tb.p_rel_single[0] > 0 && tb.p_rel_single[0] <= 1 &&
                tb.p_agg[0][1] > 0 && tb.p_agg[0][1] <= 1 &&
                tb.p_rel_both[0] > 0 && tb.p_rel_both[0] < 1,
            &failures);

  const KernelParams kp = make_kernel_params(cfg, tb);
  check_one("kernel: R(1,1) = 0",
            std::abs(kernel_eval(kp, 1.0, 1.0)) < 1e-12, &failures);

  const BranchPoints bp = branch_points(kp);
  check_one("kernel: branch point ordering",
            bp.x[0] > 0 && bp.x[0] < bp.x[1] && bp.x[1] <= 1.0 + 1e-9 &&
                bp.x[2] > 1 - 1e-9 && bp.x[2] < bp.x[3],
            &failures);

  const SymmetricParams sp = make_symmetric_params(cfg, tb);
  const DelayBounds db = delay_bounds(sp);
  check_one("closed form: bounds ordered and >= 1 slot",
            db.lower >= 1.0 && db.upper >= db.lower, &failures);

  const StabilityRegion reg = stability_region(cfg, tb);
  check_one("stability: region contains the origin neighborhood",
            reg.contains(1e-6, 1e-6), &failures);

  SimConfig sim;
  sim.slots = 20000;
  sim.replications = 1;
  sim.seed = 7;
  const SimStats s1 = run(cfg, tb, sim);
  const SimStats s2 = run(cfg, tb, sim);
  check_one("simulator: deterministic under fixed seed",
            s1.lambda_hat[0] == s2.lambda_hat[0] &&
                s1.mean_queue[1] == s2.mean_queue[1],
            &failures);
  check_one("simulator: work conservation",
            s1.arrivals_total[0] ==
                    s1.departures_total[0] + s1.final_queue[0] &&
                s1.arrivals_total[1] ==
                    s1.departures_total[1] + s1.final_queue[1],
            &failures);

  std::cout << (failures == 0 ? "all checks passed" : "checks FAILED") << "\n";
  return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aggrnet: two-aggregator random-access network analysis"};
  app.require_subcommand(1);

  std::string config_path, scenario, out_dir;
  long long seed = -1;
  int threads = 1;

  CLI::App* run_cmd = app.add_subcommand("run", "run an experiment config");
  run_cmd->add_option("config", config_path, "config file path")->required();
  run_cmd->add_option("--scenario", scenario,
                      "built-in scenario: table1, fig2, fig3-6, fig7");
  run_cmd->add_option("--out", out_dir, "output directory");
  run_cmd->add_option("--seed", seed, "override simulation seed");
  run_cmd->add_option("--threads", threads, "worker threads for sweeps");

  std::string tables_config;
  CLI::App* tables_cmd =
      app.add_subcommand("tables", "dump the success-probability tables");
  tables_cmd->add_option("config", tables_config, "config file path")
      ->required();

  CLI::App* check_cmd =
      app.add_subcommand("check", "run the invariant self-test suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed())
      return cmd_run(config_path, scenario, out_dir, seed, threads);
    if (tables_cmd->parsed()) return cmd_tables(tables_config);
    if (check_cmd->parsed()) return cmd_check();
  } catch (const aggrnet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const aggrnet::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const aggrnet::InstabilityError& e) {
    std::cerr << "instability: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
