#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "qexp/series.hpp"

namespace qexp {

/// Reproducible generator for randomized checks. Standard distributions are
/// implementation-defined, so values are drawn from the raw mt19937_64
/// stream by modulo reduction: uniform(lo, hi) = lo + next() % (hi - lo + 1).
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  long uniform(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }

 private:
  std::mt19937_64 engine_;
};

/// Mixes a label into a seed (FNV-1a over the label, xor-folded with the
/// seed) so each randomized check gets its own stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h ^ (seed * 0x9E3779B97F4A7C15ULL);
}

/// p/d with p in [-bound, bound] and d in [1, bound].
inline RatFun random_rational(const SymbolTablePtr& table, DeterministicRng& rng, long bound = 9) {
  long p = rng.uniform(-bound, bound);
  long d = rng.uniform(1, bound);
  return RatFun::constant(table, BigRational(p, d));
}

inline TruncSeries random_series(const SymbolTablePtr& table, std::size_t order, DeterministicRng& rng) {
  TruncSeries s(table, order);
  for (std::size_t i = 0; i <= order; ++i) s.set(i, random_rational(table, rng));
  return s;
}

}  // namespace qexp
