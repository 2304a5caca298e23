#pragma once

// Uniform sampling from the concatenation subsets of the cells of P^{n_l}:
// an element g of the previous level's cell (itself sampled this way) is
// refined by filling every scale-n_{l-1} block tau with a uniform member of
// the base cell P_{g(tau)}^{(n_l - n_{l-1}, m_l)}. Every sample lies in the
// cell; the full cell is not covered.

#include <cstddef>
#include <vector>

#include "bohrsets/enumeration.hpp"
#include "bohrsets/partition.hpp"
#include "bohrsets/random.hpp"

namespace bohrsets {

class CellSampler {
 public:
  /// Tabulates each base cell (n_i - n_{i-1}, m_i) by enumeration. Throws
  /// std::invalid_argument for vacuous levels and BudgetExceeded when a base
  /// group is too large to tabulate.
  explicit CellSampler(PartitionSpec spec, Budget budget = Budget{std::uint64_t{1} << 22});

  const PartitionSpec& spec() const noexcept { return spec_; }

  /// A sample from the concatenation subset of P_x^{n_l}.
  GroupElement sample(Digit x, SplitRng& rng) const { return sample_prefix(spec_.depth(), x, rng); }
  /// The same for the partition of the first l levels (scale n_l).
  GroupElement sample_prefix(std::size_t l, Digit x, SplitRng& rng) const;

  /// Members of the base cell of level i (zero-based) with label x.
  const std::vector<GroupElement>& base_cell(std::size_t i, Digit x) const { return tables_.at(i).at(x); }

 private:
  PartitionSpec spec_;
  std::vector<std::vector<std::vector<GroupElement>>> tables_;
};

GroupElement sample_cell(const PartitionSpec& spec, FieldValue x, SplitRng& rng);

}  // namespace bohrsets
