#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace dlcc {

// Seedable generator with a fixed, documented algorithm: the engine is
// std::mt19937_64 (its output sequence is pinned by the standard) and every
// distribution below is implemented here rather than taken from <random>,
// whose distributions are implementation-defined. Same seed, same stream,
// on every conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, n). n must be > 0. Rejection sampling, no bias.
  std::uint64_t index(std::uint64_t n);
  // Uniform integer in [lo, hi], inclusive.
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  // Uniform double in [0, 1) with 53 random bits.
  double uniform();
  // Standard normal via Box-Muller (one value per call, no caching).
  double normal();

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[index(i)]);
    }
  }

  template <typename T>
  const T& pick(std::span<const T> items) {
    return items[index(items.size())];
  }
  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[index(items.size())];
  }

  // k distinct indices out of [0, n), in draw order.
  std::vector<std::size_t> sampleIndices(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive independent sub-seeds.
std::uint64_t mixSeed(std::uint64_t x);
// Stable 64-bit FNV-1a over bytes, for deriving seeds from names.
std::uint64_t stableHash(std::string_view s);
std::uint64_t deriveSeed(std::uint64_t seed, std::string_view label);

}  // namespace dlcc
