#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace prp {

// Portable random stream: std::mt19937_64 (bit-exact by the standard) seeded
// through splitmix64, with our own integer/real mappings since the standard
// distributions are not portable across library implementations.
//
// Streams: Rng(seed, k) for distinct k are independent sub-streams of seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  // Uniform integer in [0, n); n > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n);
  // Index drawn proportionally to nonnegative weights (not all zero).
  std::size_t discrete(std::span<const double> weights);
  bool bernoulli(double p) { return uniform() < p; }

  Rng split(std::uint64_t stream) const { return Rng(seed_, stream_ * 0x9E3779B97F4A7C15ULL + stream + 1); }

  template <class It>
  void shuffle(It first, It last) {
    const auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
      const auto j = below(i);
      std::swap(first[static_cast<std::ptrdiff_t>(i - 1)], first[static_cast<std::ptrdiff_t>(j)]);
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace prp
