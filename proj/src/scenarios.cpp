#include "aggrnet/scenarios.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "aggrnet/bvp.hpp"
#include "aggrnet/csv.hpp"
#include "aggrnet/delay_sym.hpp"
#include "aggrnet/stability.hpp"
#include "aggrnet/throughput.hpp"

namespace aggrnet {

namespace {

std::string join_path(const std::string& dir, const std::string& file) {
  if (dir.empty() || dir == ".") return file;
  return dir.back() == '/' ? dir + file : dir + "/" + file;
}

// Runs fn(i) for i in [0, n) on the requested number of threads, preserving
// deterministic output ordering (results are indexed, not streamed).
void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex err_mutex;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<std::string> scenario_table1(const ExperimentSpec& spec) {
  const std::string path = join_path(spec.out_dir, "table1.csv");
  CsvWriter csv(path, spec.resolved, config_hash(spec),
                {"gamma", "t", "M", "stable"});
  const double gammas[] = {0.2, 0.5, 1.2, 2.0};
  const double ts[] = {0.1, 0.2};
  for (double g : gammas) {
    for (double t : ts) {
      const auto labels = classify_sensor_counts(spec.network, g, t, 30);
      for (int m = 1; m <= 30; ++m)
        csv.row({CsvWriter::num(g), CsvWriter::num(t), std::to_string(m),
                 labels[m - 1] ? "1" : "0"});
    }
  }
  return {path};
}

std::vector<std::string> scenario_fig2(const ExperimentSpec& spec) {
  const std::string path = join_path(spec.out_dir, "fig2.csv");
  CsvWriter csv(path, spec.resolved, config_hash(spec),
                {"lambda1", "lambda2"});
  NetworkConfig cfg = spec.network;
  cfg.m1 = cfg.m2 = 1;
  const SuccessTables tb = build_tables(cfg);
  for (const FrontierPoint& p : region_closure(cfg, tb, 20))
    csv.row({CsvWriter::num(p.lambda1), CsvWriter::num(p.lambda2)});
  return {path};
}

std::vector<std::string> scenario_fig36(const ExperimentSpec& spec) {
  const std::string path = join_path(spec.out_dir, "fig3-6.csv");
  CsvWriter csv(path, spec.resolved, config_hash(spec),
                {"M", "lambda1", "lambda2", "stable", "network_with_aggs",
                 "network_direct_only"});
  std::vector<double> ms;
  for (const SweepAxis& ax : spec.sweep)
    if (ax.parameter == "m") ms = ax.values;
  if (ms.empty())
    for (int m = 1; m <= 30; ++m) ms.push_back(m);

  for (double mv : ms) {
    NetworkConfig cfg = spec.network;
    cfg.m1 = cfg.m2 = static_cast<int>(mv);
    const SuccessTables tb = build_tables(cfg);
    const double l1 = arrival_rate(0, cfg, tb);
    const double l2 = arrival_rate(1, cfg, tb);
    const bool stable = is_stable(l1, l2, cfg, tb);
    std::array<bool, 2> flags{stable, stable};
    std::array<std::optional<double>, 2> mu;
    if (!stable)
      for (int i = 0; i < 2; ++i) mu[i] = service_rate(i, cfg, tb, 0.0);
    const double with_aggs = network_throughput(cfg, tb, flags, mu);
    const double direct_only = cfg.m1 * direct_throughput(0, cfg, tb) +
                               cfg.m2 * direct_throughput(1, cfg, tb);
    csv.row({std::to_string(cfg.m1), CsvWriter::num(l1), CsvWriter::num(l2),
             stable ? "1" : "0", CsvWriter::num(with_aggs),
             CsvWriter::num(direct_only)});
  }
  return {path};
}

std::vector<std::string> scenario_fig7(const ExperimentSpec& spec,
                                       int threads) {
  const std::string path = join_path(spec.out_dir, "fig7.csv");
  std::vector<double> ts;
  for (const SweepAxis& ax : spec.sweep)
    if (ax.parameter == "t") ts = ax.values;
  if (ts.empty()) ts = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3};
  const bool simulate = spec.analyses.count(Analysis::kSimulate) > 0;

  struct Row {
    double lambda, d_low, d_up, d_sim = 0, d_sim_se = 0;
    bool has_sim = false;
  };
  std::vector<Row> rows(ts.size());
  parallel_for(static_cast<int>(ts.size()), threads, [&](int i) {
    NetworkConfig cfg = spec.network;
    cfg.m1 = cfg.m2 = 1;
    cfg.t1 = cfg.t2 = ts[i];
    const SuccessTables tb = build_tables(cfg);
    const SymmetricParams p = make_symmetric_params(cfg, tb);
    const DelayBounds b = delay_bounds(p);
    Row& r = rows[i];
    r.lambda = symmetric_arrival_rate(p);
    r.d_low = b.lower;
    r.d_up = b.upper;
    if (simulate) {
      const SimStats st = run(cfg, tb, spec.sim);
      r.d_sim = 0.5 * (st.mean_sojourn[0] + st.mean_sojourn[1]);
      r.d_sim_se = 0.5 * std::hypot(st.mean_sojourn_se[0],
                                    st.mean_sojourn_se[1]);
      r.has_sim = true;
    }
  });

  CsvWriter csv(path, spec.resolved, config_hash(spec),
                {"lambda", "D_low", "D_up", "D_sim", "sim_stderr"});
  for (const Row& r : rows)
    csv.row({CsvWriter::num(r.lambda), CsvWriter::num(r.d_low),
             CsvWriter::num(r.d_up),
             r.has_sim ? CsvWriter::num(r.d_sim) : "",
             r.has_sim ? CsvWriter::num(r.d_sim_se) : ""});
  return {path};
}

std::vector<std::string> generic_sweep(const ExperimentSpec& spec,
                                       int threads) {
  // Cartesian product of the sweep axes (an empty sweep is a single point).
  std::vector<std::vector<double>> points{{}};
  for (const SweepAxis& ax : spec.sweep) {
    std::vector<std::vector<double>> next;
    for (const auto& base : points)
      for (double v : ax.values) {
        auto p = base;
        p.push_back(v);
        next.push_back(std::move(p));
      }
    points = std::move(next);
  }

  std::vector<std::string> columns;
  for (const SweepAxis& ax : spec.sweep) columns.push_back(ax.parameter);
  const std::vector<std::string> metric_cols{
      "lambda1",      "lambda2",      "stable",       "t_total1",
      "t_total2",     "network",      "d_low",        "d_up",
      "d1_bvp",       "d2_bvp",       "sim_sojourn1", "sim_sojourn2",
      "sim_lambda1",  "sim_lambda2"};
  columns.insert(columns.end(), metric_cols.begin(), metric_cols.end());

  std::vector<std::vector<std::string>> rows(points.size());
  auto point_context = [&](int idx) {
    std::string where = "sweep point (";
    for (std::size_t a = 0; a < spec.sweep.size(); ++a)
      where += spec.sweep[a].parameter + "=" + CsvWriter::num(points[idx][a]) +
               (a + 1 < spec.sweep.size() ? ", " : "");
    return where + "): ";
  };
  auto compute_point = [&](int idx) {
    try {
      NetworkConfig cfg = spec.network;
      for (std::size_t a = 0; a < spec.sweep.size(); ++a)
        apply_parameter(&cfg, spec.sweep[a].parameter, points[idx][a]);
      const SuccessTables tb = build_tables(cfg);

      std::vector<std::string> cells;
      for (double v : points[idx]) cells.push_back(CsvWriter::num(v));
      cells.resize(columns.size(), "");
      auto put = [&](const std::string& name, const std::string& v) {
        for (std::size_t c = 0; c < columns.size(); ++c)
          if (columns[c] == name) cells[c] = v;
      };

      const double l1 = arrival_rate(0, cfg, tb);
      const double l2 = arrival_rate(1, cfg, tb);
      if (spec.analyses.count(Analysis::kThroughput) ||
          spec.analyses.count(Analysis::kStability)) {
        put("lambda1", CsvWriter::num(l1));
        put("lambda2", CsvWriter::num(l2));
      }
      bool stable = true;
      if (spec.analyses.count(Analysis::kStability)) {
        stable = is_stable(l1, l2, cfg, tb);
        put("stable", stable ? "1" : "0");
      }
      if (spec.analyses.count(Analysis::kThroughput)) {
        const ThroughputReport rep = throughput_report(cfg, tb);
        put("t_total1", CsvWriter::num(rep.t_total[0]));
        put("t_total2", CsvWriter::num(rep.t_total[1]));
        std::array<bool, 2> flags{stable, stable};
        std::array<std::optional<double>, 2> mu;
        if (!stable)
          for (int i = 0; i < 2; ++i) mu[i] = service_rate(i, cfg, tb, 0.0);
        put("network", CsvWriter::num(network_throughput(cfg, tb, flags, mu)));
      }
      if (spec.analyses.count(Analysis::kDelayClosed)) {
        const SymmetricParams p = make_symmetric_params(cfg, tb);
        const DelayBounds b = delay_bounds(p);
        put("d_low", CsvWriter::num(b.lower));
        put("d_up", CsvWriter::num(b.upper));
      }
      if (spec.analyses.count(Analysis::kDelayBvp)) {
        const KernelParams kp = make_kernel_params(cfg, tb);
        const auto [d1, d2] = mean_delays(kp);
        put("d1_bvp", CsvWriter::num(d1));
        put("d2_bvp", CsvWriter::num(d2));
      }
      if (spec.analyses.count(Analysis::kSimulate)) {
        const SimStats st = run(cfg, tb, spec.sim);
        put("sim_sojourn1", CsvWriter::num(st.mean_sojourn[0]));
        put("sim_sojourn2", CsvWriter::num(st.mean_sojourn[1]));
        put("sim_lambda1", CsvWriter::num(st.lambda_hat[0]));
        put("sim_lambda2", CsvWriter::num(st.lambda_hat[1]));
      }
      rows[idx] = std::move(cells);
    } catch (const ConfigError& e) {
      throw ConfigError(point_context(idx) + e.what());
    } catch (const NumericError& e) {
      throw NumericError(point_context(idx) + e.what());
    } catch (const InstabilityError& e) {
      throw InstabilityError(point_context(idx) + e.what());
    }
  };

  const std::string path = join_path(spec.out_dir, "sweep.csv");
  auto flush_rows = [&] {
    CsvWriter csv(path, spec.resolved, config_hash(spec), columns);
    for (const auto& r : rows)
      if (!r.empty()) csv.row(r);
  };
  try {
    parallel_for(static_cast<int>(points.size()), threads, compute_point);
  } catch (...) {
    flush_rows();  // partial results are still written out
    throw;
  }
  flush_rows();
  return {path};
}

}  // namespace

std::vector<std::string> run_experiment(const ExperimentSpec& spec,
                                        int threads) {
  if (spec.scenario == "table1") return scenario_table1(spec);
  if (spec.scenario == "fig2") return scenario_fig2(spec);
  if (spec.scenario == "fig3-6") return scenario_fig36(spec);
  if (spec.scenario == "fig7") return scenario_fig7(spec, threads);
  if (!spec.scenario.empty())
    throw ConfigError("unknown scenario '" + spec.scenario + "'");
  return generic_sweep(spec, threads);
}

}  // namespace aggrnet
