// Deterministic pseudo-random number utilities.
//
// Simulation results must be bit-reproducible across runs and platforms for a
// fixed master seed, so this header avoids std::uniform_int_distribution and
// friends (their output is implementation-defined) and builds everything on a
// splitmix64 core: integer arithmetic only, identical on every conforming
// compiler.  Independent streams (placement, demand, updates, per trial) are
// derived by hashing the master seed with stream labels.

#pragma once

#include <cstdint>
#include <vector>

namespace cacm {

// One avalanche step of the splitmix64 generator (public-domain algorithm by
// Sebastiano Vigna).  Also used as a 64-bit finalizer/mixer.
constexpr std::uint64_t splitmix64_step(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Combine a seed with a stream label into a fresh, well-mixed 64-bit seed.
// Used to give every (trial, purpose) pair its own independent stream:
//   seed_for_placement = mix_seed(mix_seed(master, trial), kPlacementStream)
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed ^ (stream * 0xD1B54A32D192ED03ull + 0x9E3779B97F4A7C15ull);
  std::uint64_t a = splitmix64_step(s);
  std::uint64_t b = splitmix64_step(s);
  return a ^ (b << 1);
}

// Minimal deterministic generator.  Not cryptographic; plenty for Monte Carlo.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64_step(state_); }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Unbiased uniform integer in [0, n).  Rejection sampling over the top
  // multiple of n; expected < 2 draws.
  std::uint64_t bounded(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    for (;;) {
      const std::uint64_t x = next_u64();
      if (x < limit) return x % n;
    }
  }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return next_unit() < p;
  }

  // First k entries of a uniformly random permutation of {0, .., n-1}
  // (partial Fisher-Yates), returned sorted ascending so callers get a
  // canonical subset representation.
  std::vector<int> sample_subset(int n, int k);

 private:
  std::uint64_t state_;
};

inline std::vector<int> Rng::sample_subset(int n, int k) {
  if (k < 0) k = 0;
  if (k > n) k = n;
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(bounded(static_cast<std::uint64_t>(n - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  idx.resize(static_cast<std::size_t>(k));
  // Canonical order.
  for (std::size_t a = 1; a < idx.size(); ++a) {
    int v = idx[a];
    std::size_t b = a;
    while (b > 0 && idx[b - 1] > v) {
      idx[b] = idx[b - 1];
      --b;
    }
    idx[b] = v;
  }
  return idx;
}

}  // namespace cacm
