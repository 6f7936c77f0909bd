#pragma once
// Common error types and small numeric helpers shared by all aggrnet modules.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace aggrnet {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid geometry / configuration input.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Numeric routine failed to converge or produced inconsistent results.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& msg) : Error(msg) {}
};

// A computation was requested outside its stability / validity region.
class InstabilityError : public Error {
 public:
  explicit InstabilityError(const std::string& msg) : Error(msg) {}
};

// Log of the binomial coefficient C(n, k); exact enough for n up to a few
// thousand.  Used so that M ~ 30..64 sensor sums never overflow.
inline double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// w = C(n,k) p^k (1-p)^(n-k) computed in log space (0^0 := 1).
inline double binom_pmf(int n, int k, double p) {
  if (k < 0 || k > n) return 0.0;
  if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return k == n ? 1.0 : 0.0;
  return std::exp(log_binomial(n, k) + k * std::log(p) +
                  (n - k) * std::log1p(-p));
}

// Safeguarded bisection on [lo, hi]; f(lo) and f(hi) must straddle zero.
template <typename F>
double bisect(F&& f, double lo, double hi, int iters = 100) {
  double flo = f(lo);
  for (int i = 0; i < iters; ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if ((flo <= 0.0) == (fm <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace aggrnet
