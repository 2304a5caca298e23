#pragma once

// Hamming balls U(n,k) (scale-n elements nonzero on at most k cylinders) and
// their translates U(n,k) + c*1; V(n,k) is the translate by the constant 1.

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "bohrsets/enumeration.hpp"
#include "bohrsets/field_group.hpp"
#include "bohrsets/random.hpp"

namespace bohrsets {

/// Scale and radius of a Hamming ball. Radii above 2^n are clamped, since
/// U(n, 2^n) is already all of G_p^(n).
struct BallSpec {
  BallSpec(unsigned scale, std::uint64_t radius);

  unsigned n;
  std::uint64_t k;
};

/// Number of nonzero digits.
std::size_t hamming_weight(const GroupElement& g) noexcept;

/// Membership in U(n,k). Elements of finer scale belong only if they are
/// constant on scale-n cylinders; coarser elements are embedded first.
bool in_U(const GroupElement& g, BallSpec ball);
/// Membership in V(n,k) = U(n,k) + 1.
bool in_V(const GroupElement& g, BallSpec ball);
/// Membership in the union of U(n_i,k_i) + shift*1 over the listed balls.
bool in_S_union(const GroupElement& g, std::span<const BallSpec> balls, FieldValue shift);

/// |U(n,k)| = sum_{j<=k} C(2^n, j) (p-1)^j.
mpz_class ball_size(Prime p, BallSpec ball);

/// Members of U(n,k), by increasing weight; each exactly once.
std::vector<GroupElement> enumerate_ball(Prime p, BallSpec ball, Budget budget = {});

/// Uniformly random member of U(n,k).
GroupElement sample_ball(Prime p, BallSpec ball, SplitRng& rng);

}  // namespace bohrsets
