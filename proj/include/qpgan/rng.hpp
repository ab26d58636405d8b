#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace qpgan {

// splitmix64 step; good avalanche, 64-bit state.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic child-seed derivation: every consumer of randomness in a run
// gets its seed from (root, stream, counter), so single-threaded and parallel
// executions of the same run agree.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream,
                                 std::uint64_t counter = 0) {
  std::uint64_t s = root;
  s ^= 0x9e3779b97f4a7c15ULL * (stream + 1);
  splitmix64(s);
  s ^= 0xbf58476d1ce4e5b9ULL * (counter + 1);
  std::uint64_t t = s;
  return splitmix64(t);
}

// Small self-contained generator (splitmix64 stream). Not std::mt19937 on
// purpose: the stdlib distributions are not bit-stable across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  // uniform in [0, 1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [0, n)
  std::uint64_t uniform_int(std::uint64_t n) {
    // rejection sampling to avoid modulo bias
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

  int rademacher() { return (next_u64() & 1u) ? 1 : -1; }

  // standard normal via Box-Muller
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u1, u2;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace qpgan
