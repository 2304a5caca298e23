#pragma once

#include <cstdint>
#include <random>

#include <gmpxx.h>

namespace bohrsets {

/// Deterministic splittable random source. Child streams derived with split()
/// are independent of each other and of the parent, so a parallel run with one
/// stream per task reproduces exactly from a single seed.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed);

  SplitRng split(std::uint64_t stream) const;

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Uniform big integer in [0, bound).
mpz_class uniform_below(const mpz_class& bound, SplitRng& rng);

}  // namespace bohrsets
