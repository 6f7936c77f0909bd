#pragma once
// Counter-based pseudo-random number generation.
//
// Every draw is a pure function of (seed, stream, counter): the generator
// carries no hidden state, so two simulations driven by the same seed consume
// *identical* randomness per (slot, purpose, entity) key regardless of how
// their internal state differs.  This is what makes pathwise coupling between
// the original and the dominant system exact, and results bit-reproducible
// across platforms.
//
// The mixing function is the well-known splitmix64 finalizer applied to the
// xor-combined key words (stafford mix13 constants).

#include <cmath>
#include <cstdint>

namespace aggrnet {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {}

  // 64 uniform bits for a counter key (e.g. slot) and a purpose/entity tag.
  std::uint64_t bits(std::uint64_t counter, std::uint64_t tag) const {
    std::uint64_t h = detail::mix64(seed_ ^ 0x243f6a8885a308d3ULL);
    h = detail::mix64(h ^ stream_);
    h = detail::mix64(h ^ counter);
    h = detail::mix64(h ^ tag);
    return h;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double u01(std::uint64_t counter, std::uint64_t tag) const {
    return static_cast<double>(bits(counter, tag) >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p, std::uint64_t counter, std::uint64_t tag) const {
    return u01(counter, tag) < p;
  }

  // Unit-mean exponential (Rayleigh power fade).
  double exponential(std::uint64_t counter, std::uint64_t tag) const {
    // 1 - u is in (0, 1], so the log is finite.
    return -std::log(1.0 - u01(counter, tag));
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace aggrnet
