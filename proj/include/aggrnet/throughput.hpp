#pragma once
// Per-sensor and network-wide throughput, and aggregator arrival statistics.

#include <array>
#include <optional>
#include <vector>

#include "aggrnet/tables.hpp"

namespace aggrnet {

struct ThroughputReport {
  std::array<double, 2> t_direct{};         // T_{i,D}
  std::array<double, 2> t_relayed{};        // T_{i,R_i}
  std::array<double, 2> t_total{};          // T_i = T_{i,D} + T_{i,R_i}
  std::array<double, 2> relayed_fraction{}; // T_{i,R_i} / T_i (0 when T_i = 0)
  std::array<double, 2> lambda{};           // arrival rate at aggregator i
  std::array<std::vector<double>, 2> arrival_pmf;  // l_{k,i}, k = 0..M_i
  double network_total = 0.0;               // M1 T1 + M2 T2 (stable queues)
};

// area is 0-based (0 = area 1, 1 = area 2) in all operations below.
double direct_throughput(int area, const NetworkConfig& cfg,
                         const SuccessTables& tables);
double relayed_throughput(int area, const NetworkConfig& cfg,
                          const SuccessTables& tables);
std::vector<double> arrival_pmf(int area, const NetworkConfig& cfg,
                                const SuccessTables& tables);
double arrival_rate(int area, const NetworkConfig& cfg,
                    const SuccessTables& tables);
double relayed_fraction(int area, const NetworkConfig& cfg,
                        const SuccessTables& tables);

// Network-wide throughput.  A stable queue contributes M_i * T_i; an unstable
// queue's relayed part is replaced by its (saturated) service rate mu_i, which
// must be supplied for every unstable queue.
double network_throughput(const NetworkConfig& cfg, const SuccessTables& tables,
                          std::array<bool, 2> stable,
                          std::array<std::optional<double>, 2> mu = {});

ThroughputReport throughput_report(const NetworkConfig& cfg,
                                   const SuccessTables& tables);

}  // namespace aggrnet
