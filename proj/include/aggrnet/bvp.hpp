#pragma once
// Boundary-value solutions of the fundamental functional equation: the case
// split (Dirichlet vs. homogeneous Riemann-Hilbert), pole detection, the
// Riemann-Hilbert index, the H(x,0) evaluators, and mean delays via Little's
// law.  All solves assume the capture case (joint relay success = 0).

#include <array>
#include <memory>
#include <utility>
#include <vector>

#include "aggrnet/conformal.hpp"

namespace aggrnet {

enum class BvpCase { kDirichlet, kRiemannHilbert };

struct PoleInfo {
  double xbar = 0.0;  // real pole location in (1, beta0); meaningful iff r = 1
  int r = 0;          // 0 or 1
};

struct IndexReport {
  double chi_numeric = 0.0;  // -(1/pi) * winding of arg U along the contour
  bool lemma_zero = false;   // index lemma predicts chi = 0
  bool consistent = false;   // numeric and lemma agree
};

struct BoundaryValues {
  double h00 = 0.0;   // H(0,0)
  double h10 = 0.0;   // H(1,0)
  double h01 = 0.0;   // H(0,1)
  double dh10 = 0.0;  // H1(1,0) = d/dx H(x,0) at x = 1
  double dh01 = 0.0;  // H2(0,1) = d/dy H(0,y) at y = 1
  BvpCase case_tag = BvpCase::kRiemannHilbert;
  PoleInfo pole;
  double chi = 0.0;
  std::array<double, 2> con_residual{};  // conservation-of-flow residuals
};

// Dirichlet iff ah2/p1 + ah1/p2 = 1 (within 1e-12).
BvpCase classify_case(const KernelParams& kp);
// rho = l1/(a1 p1) + l2/(a2 p2); in the Dirichlet case H(0,0) = 1 - rho.
double dirichlet_rho(const KernelParams& kp);

// Scan A(x, Y0(x)) for a real zero on (1, beta0).
PoleInfo detect_pole(const KernelParams& kp, const ContourPolar& contour);

// Numeric winding of U = A/B along the contour (pole factored out) against
// the index lemma's stability conditions.  Throws NumericError when they
// disagree.
IndexReport rh_index(const KernelParams& kp, const ContourPolar& contour,
                     const ConformalMap& map, const PoleInfo& pole);

// One-orientation solve: boundary values and an H(x,0) evaluator on [0, ~1].
// Construction runs the full pipeline (contour, Theodorsen, case dispatch).
class BvpSolve {
 public:
  explicit BvpSolve(const KernelParams& kp, int samples = 512,
                    double tol = 1e-6, int max_iters = 500);

  double h_x0(double x) const;  // H(x, 0) for real x in the contour interior
  const BoundaryValues& boundary() const { return boundary_; }
  const KernelParams& params() const { return kp_; }
  const ContourPolar& contour() const { return *contour_; }
  const ConformalMap& map() const { return *map_; }

  // Mean queue-1 delay (slots) via Little's law from this orientation.
  double mean_delay1() const;

 private:
  void solve_dirichlet();
  void solve_riemann_hilbert();
  double cauchy_exp(double z) const;  // |E(z)| on the real axis

  KernelParams kp_;
  std::shared_ptr<const ContourPolar> contour_;
  std::shared_ptr<const ConformalMap> map_;
  BoundaryValues boundary_;
  // Riemann-Hilbert state.
  double k_const_ = 0.0, c0_ = 0.0;
  std::vector<double> log_j_;  // Im log J at the unit-circle samples
  // Dirichlet state.
  double rho_load_ = 0.0;
  std::vector<double> f_;  // boundary data f(e^{i phi_k})
};

// Full solve of both orientations (the L-contour problem is the transposed
// kernel); returns (D1, D2) in slots.
std::pair<double, double> mean_delays(const KernelParams& kp,
                                      int samples = 512, double tol = 1e-6,
                                      int max_iters = 500);

}  // namespace aggrnet
