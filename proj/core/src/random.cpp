#include "bohrsets/random.hpp"

#include <stdexcept>
#include <vector>

namespace bohrsets {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SplitRng::SplitRng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

SplitRng SplitRng::split(std::uint64_t stream) const {
  return SplitRng(splitmix64(seed_ ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
}

std::uint64_t SplitRng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty sampling range");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % bound;
  }
}

mpz_class uniform_below(const mpz_class& bound, SplitRng& rng) {
  if (bound <= 0) throw std::invalid_argument("empty sampling range");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  const unsigned top_bits = static_cast<unsigned>(bits - (words - 1) * 64);
  std::vector<std::uint64_t> limbs(words);
  mpz_class candidate;
  for (;;) {
    for (auto& w : limbs) w = rng.next();
    if (top_bits < 64) limbs[0] &= (1ULL << top_bits) - 1;
    mpz_import(candidate.get_mpz_t(), words, 1, sizeof(std::uint64_t), 0, 0, limbs.data());
    if (candidate < bound) return candidate;
  }
}

}  // namespace bohrsets
