#pragma once
// Aggregator service rates, the two-queue stability region, its closure over
// access probabilities, and the sensor-count classification sweep.

#include <array>
#include <vector>

#include "aggrnet/tables.hpp"

namespace aggrnet {

// One sub-region R_i of the stability region R = R1 u R2:
//   lambda_i < a_i - slope_i * lambda_j   and   lambda_j < cap_j.
struct SubRegion {
  double intercept = 0.0;  // a_i = alpha_i * p^D_{Ri,{Ri}}
  double slope = 0.0;      // coefficient multiplying lambda_j
  double cap = 0.0;        // bound on lambda_j
};

struct StabilityRegion {
  std::array<SubRegion, 2> r;  // r[0] bounds lambda1, r[1] bounds lambda2

  // Strict-inequality membership (Loynes).
  bool contains(double lambda1, double lambda2) const;
  // Largest lambda1 with (lambda1, lambda2) inside, 0 if none.
  double max_lambda1(double lambda2) const;
};

// p_other_empty = Pr(N_j = 0): service rate mu_i of aggregator i.
double service_rate(int i, const NetworkConfig& cfg, const SuccessTables& tables,
                    double p_other_empty);

StabilityRegion stability_region(const NetworkConfig& cfg,
                                 const SuccessTables& tables);

bool is_stable(double lambda1, double lambda2, const NetworkConfig& cfg,
               const SuccessTables& tables);

// Upper-right (Pareto) frontier of the union of R(alpha1, alpha2) over an
// (alpha1, alpha2) grid of the given per-axis resolution.
struct FrontierPoint {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};
std::vector<FrontierPoint> region_closure(const NetworkConfig& cfg,
                                          const SuccessTables& tables,
                                          int alpha_grid_resolution);

// Membership test against the sampled closure (union over the same grid).
bool closure_contains(double lambda1, double lambda2, const NetworkConfig& cfg,
                      const SuccessTables& tables, int alpha_grid_resolution);

// Table-I style sweep: symmetric setup M1 = M2 = M, t1 = t2 = t,
// alpha1 = alpha2 = alpha; label[M-1] is true iff the queues are stable.
std::vector<bool> classify_sensor_counts(const NetworkConfig& cfg_template,
                                         double gamma, double t, int m_max);

}  // namespace aggrnet
