#pragma once

// Seed derivation and Bernoulli coins. Every random stream is a pure function
// of (master seed, index), so results do not depend on scheduling.

#include "radolab/rational.hpp"

#include <cstdint>
#include <random>

namespace radolab {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Exact Bernoulli(p) test on 64-bit hash values: h < p·2^64.
class BernoulliThreshold {
 public:
  explicit BernoulliThreshold(const Rational& p);

  bool accepts(std::uint64_t h) const { return static_cast<unsigned __int128>(h) < threshold_; }
  const Rational& probability() const { return p_; }

 private:
  Rational p_;
  unsigned __int128 threshold_;  // ceil(p·2^64)
};

/// Independent fair coin for the unordered pair {i, j} under `seed`.
constexpr std::uint64_t pair_hash(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
  if (i > j) { const auto t = i; i = j; j = t; }
  return splitmix64(derive_seed(seed, i) ^ splitmix64(j * 0xd1b54a32d192ed03ULL + 1));
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);  // uniform in [0, bound)

}  // namespace radolab
