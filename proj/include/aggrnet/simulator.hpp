#pragma once
// Slot-level Monte Carlo simulator: the independent oracle for throughput,
// arrival statistics, stability, and delay.
//
// Slot semantics (matching the analysis): queue states are observed at the
// beginning of the slot; service eligibility uses that state; packets that
// arrive during a slot join their queue after service, so a served packet's
// sojourn is at least one slot.
//
// All randomness is drawn from a counter-based generator keyed by
// (seed, replication, slot, purpose-tag), so draws are independent of queue
// state.  Two runs with the same seed are coupled pathwise, which makes the
// stochastic-dominance comparison (dominant system vs. original) meaningful
// slot by slot.

#include <array>
#include <cstdint>
#include <vector>

#include "aggrnet/tables.hpp"

namespace aggrnet {

enum class SimMode { kIndependentSuccess, kFullSinr };
enum class DominantMode { kNone, kQueue1Saturated, kQueue2Saturated };
enum class Stability { kStable, kUnstable, kInconclusive };

struct SimConfig {
  std::int64_t slots = 1000000;
  std::int64_t warmup = -1;  // < 0 means the default 10% of slots
  std::uint64_t seed = 1;
  int replications = 1;
  SimMode mode = SimMode::kIndependentSuccess;
  DominantMode dominant = DominantMode::kNone;
  std::int64_t queue_cap = 10000000;
  bool keep_trace = false;  // record (q1, q2) per slot for replication 0

  std::int64_t effective_warmup() const {
    return warmup >= 0 ? warmup : slots / 10;
  }
  void validate() const;
};

struct SimStats {
  // Per-area sensor statistics (rates per slot per sensor).
  std::array<double, 2> t_direct{}, t_direct_se{};
  std::array<double, 2> t_relayed{}, t_relayed_se{};
  // Per-aggregator arrival statistics.
  std::array<double, 2> lambda_hat{}, lambda_hat_se{};
  std::array<std::vector<double>, 2> arrival_pmf;  // empirical l_{k,i}
  // Per-aggregator queue statistics.
  std::array<double, 2> mu_hat{}, mu_hat_se{};  // departures per busy slot
  std::array<double, 2> mean_queue{}, mean_queue_se{};
  std::array<double, 2> mean_sojourn{}, mean_sojourn_se{};  // slots
  std::array<double, 2> p_empty{}, p_empty_se{};
  double p_both_busy = 0.0, p_both_busy_se = 0.0;
  // Queue-growth regression (total queue over the last half of the run).
  double slope = 0.0, slope_stderr = 0.0;
  std::int64_t max_queue = 0;
  // Work-conservation counters (first replication).
  std::array<std::int64_t, 2> arrivals_total{}, departures_total{},
      final_queue{};
  std::int64_t slots_measured = 0;
  int replications = 0;
  std::vector<std::array<std::int64_t, 2>> trace;  // iff keep_trace
};

SimStats run(const NetworkConfig& cfg, const SuccessTables& tables,
             const SimConfig& sim);

Stability estimate_stability(const SimStats& stats);

// run() with the requested saturated-queue dominant mode.
SimStats dominant_run(const NetworkConfig& cfg, const SuccessTables& tables,
                      const SimConfig& sim, DominantMode mode);

}  // namespace aggrnet
