#include "bohrsets/hamming.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace bohrsets {

BallSpec::BallSpec(unsigned scale, std::uint64_t radius) : n(scale), k(radius) {
  if (scale > kMaxScale) throw std::invalid_argument("ball scale too large");
  k = std::min<std::uint64_t>(radius, std::uint64_t{1} << scale);
}

std::size_t hamming_weight(const GroupElement& g) noexcept { return g.size() - g.count(0, g.size(), 0); }

bool in_U(const GroupElement& g, BallSpec ball) {
  if (g.scale() > ball.n) {
    if (!g.is_constant_on(ball.n)) return false;
    return hamming_weight(coarsen(g, ball.n)) <= ball.k;
  }
  const std::uint64_t weight = std::uint64_t{hamming_weight(g)} << (ball.n - g.scale());
  return weight <= ball.k;
}

bool in_V(const GroupElement& g, BallSpec ball) {
  const GroupElement one = GroupElement::constant(g.prime(), g.scale(), FieldValue(g.prime(), 1));
  return in_U(sub(g, one), ball);
}

bool in_S_union(const GroupElement& g, std::span<const BallSpec> balls, FieldValue shift) {
  const GroupElement centred = sub(g, GroupElement::constant(g.prime(), g.scale(), shift));
  return std::any_of(balls.begin(), balls.end(), [&](BallSpec b) { return in_U(centred, b); });
}

namespace {

mpz_class binomial(std::uint64_t n, std::uint64_t k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

/// C(2^n, w) (p-1)^w: the number of weight-w elements.
mpz_class shell_size(Prime p, unsigned n, std::uint64_t w) {
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), p.value() - 1, w);
  return binomial(std::uint64_t{1} << n, w) * power;
}

}  // namespace

mpz_class ball_size(Prime p, BallSpec ball) {
  mpz_class total = 0;
  for (std::uint64_t w = 0; w <= ball.k; ++w) total += shell_size(p, ball.n, w);
  return total;
}

std::vector<GroupElement> enumerate_ball(Prime p, BallSpec ball, Budget budget) {
  require_within(ball_size(p, ball), budget,
                 "enumerating U(" + std::to_string(ball.n) + "," + std::to_string(ball.k) + ")");
  const std::size_t length = std::size_t{1} << ball.n;
  const Digit top = p.value() - 1;
  std::vector<GroupElement> out;
  std::vector<Digit> digits(length, 0);
  for (std::uint64_t w = 0; w <= ball.k; ++w) {
    std::vector<std::size_t> positions(w);
    for (std::size_t i = 0; i < w; ++i) positions[i] = i;
    for (;;) {
      std::vector<Digit> values(w, 1);
      for (;;) {
        std::fill(digits.begin(), digits.end(), 0);
        for (std::size_t i = 0; i < w; ++i) digits[positions[i]] = values[i];
        out.push_back(GroupElement::from_digits(p, ball.n, digits));
        std::size_t i = w;
        while (i > 0 && values[i - 1] == top) values[--i] = 1;
        if (i == 0) break;
        ++values[i - 1];
      }
      // next w-combination of positions in lexicographic order
      std::size_t i = w;
      while (i > 0 && positions[i - 1] == length - w + (i - 1)) --i;
      if (i == 0) break;
      ++positions[i - 1];
      for (std::size_t j = i; j < w; ++j) positions[j] = positions[j - 1] + 1;
    }
  }
  return out;
}

GroupElement sample_ball(Prime p, BallSpec ball, SplitRng& rng) {
  mpz_class r = uniform_below(ball_size(p, ball), rng);
  std::uint64_t weight = 0;
  for (;; ++weight) {
    const mpz_class shell = shell_size(p, ball.n, weight);
    if (r < shell) break;
    r -= shell;
  }
  const std::uint64_t length = std::uint64_t{1} << ball.n;
  // Floyd's algorithm for a uniform weight-subset of positions
  std::unordered_set<std::uint64_t> chosen;
  for (std::uint64_t j = length - weight; j < length; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    chosen.insert(chosen.contains(t) ? j : t);
  }
  std::vector<std::uint64_t> positions(chosen.begin(), chosen.end());
  std::sort(positions.begin(), positions.end());
  std::vector<Digit> digits(length, 0);
  for (std::uint64_t pos : positions) digits[pos] = static_cast<Digit>(1 + rng.below(p.value() - 1));
  return GroupElement::from_digits(p, ball.n, digits);
}

}  // namespace bohrsets
