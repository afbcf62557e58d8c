#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace pmgv {

// Deterministic RNG handle. Samplers are implemented directly on the raw
// 64-bit stream so that results do not depend on the standard library's
// distribution internals, only on the standardized mt19937_64 sequence.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, n). Rejection sampling, unbiased.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = n * (UINT64_MAX / n);
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % n;
  }

  // Knuth's product method; adequate for the per-pulse means used here.
  int poisson(double mean) {
    const double limit = std::exp(-mean);
    int k = 0;
    double prod = 1.0;
    do {
      ++k;
      prod *= uniform();
    } while (prod > limit);
    return k - 1;
  }

  // Counting thinning of small photon numbers.
  int binomial(int n, double p) {
    int count = 0;
    for (int i = 0; i < n; ++i) count += bernoulli(p) ? 1 : 0;
    return count;
  }

 private:
  std::mt19937_64 engine_;
};

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed for the named substream at a given round index. Every consumer of
// randomness draws from its own (name, round) stream, so toggling one
// subsystem (for example the adversary) never perturbs the draws of another.
constexpr std::uint64_t substream_seed(std::uint64_t master, std::string_view name,
                                       std::uint64_t index = 0) {
  return mix64(mix64(master ^ fnv1a64(name)) + 0x9E3779B97F4A7C15ULL * (index + 1));
}

inline Rng substream(std::uint64_t master, std::string_view name,
                     std::uint64_t index = 0) {
  return Rng(substream_seed(master, name, index));
}

}  // namespace pmgv
