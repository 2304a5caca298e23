#pragma once

// Exact cell cardinalities of P^{n_l} without enumeration.
//
// All cells of a partition have the same size, so a level with B blocks and
// inner cell size c contributes c^B times the number K of label words in
// F_p^B whose count profile matches some pattern S in S_x. K is a sum of
// multinomials, evaluated by convolving one label at a time.

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "bohrsets/partition.hpp"

namespace bohrsets {

struct CountOptions {
  /// Exact arithmetic is used while log2 |G_p^(n_l)| stays below this many
  /// bits; above it counts are carried in log space.
  std::uint64_t max_exact_bits = std::uint64_t{1} << 24;
};

struct PartitionCounts {
  bool exact = true;
  /// |P_x| (the same for every x), |Z| and |G_p^(n_l)|; set only when exact.
  mpz_class cell;
  mpz_class z;
  mpz_class group;
  /// Always set. log2 of zero is -infinity.
  long double log2_cell = 0;
  long double log2_group = 0;
  /// Bound on the absolute error of log2_cell (zero when exact).
  long double log2_error = 0;
  std::vector<std::size_t> vacuous_levels;

  /// |P_x| or |Z|; requires exact.
  mpz_class size_of(CellLabel label) const;
  /// |P_x| / |G_p^(n_l)|; requires exact.
  mpq_class cell_fraction() const;
  /// cell / group as a double, from whichever representation is available.
  double cell_fraction_approx() const;
};

PartitionCounts count_partition(const PartitionSpec& spec, CountOptions options = {});

/// Exact |P_x| or |Z|. Throws BudgetExceeded when the exact budget is too small.
mpz_class count_cell(const PartitionSpec& spec, CellLabel label, CountOptions options = {});

/// Number of words in F_p^B (B = 2^block_scale) with s labels occurring more
/// than B/p + m times and the other p - s fewer than B/p - m times.
mpz_class pattern_words(Prime p, unsigned block_scale, unsigned margin, unsigned s);

/// p(2m+1) (p-1)^(2^n - floor(2^n/p - m)) M_{n,m}, where M_{n,m} is the
/// largest C(2^n, t) with 2^n/p - m <= t <= 2^n/p + m (zero if no such t).
mpz_class z_bound(Prime p, unsigned n, unsigned m);

/// |P_x^{first l-1 levels}| * |P_x^{(n_l - n_{l-1}, m_l)}|^(2^(n_{l-1})): the
/// size of the union of the concatenation sets over the previous cell, a lower
/// bound for |P_x^{n_l}|. Requires depth() >= 2 and exact counting.
mpz_class concatenation_bound(const PartitionSpec& spec, CountOptions options = {});

}  // namespace bohrsets
