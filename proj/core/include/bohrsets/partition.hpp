#pragma once

// Bias patterns and the iterated partitions P^{(n_1,m_1),...,(n_l,m_l)} of
// G_p^(n_l) into cells P_0, ..., P_{p-1} and a remainder Z.
//
// A level (n_i, m_i) looks at the 2^(n_i - n_{i-1}) blocks of an element of
// scale n_i - n_{i-1} + (deeper scales), labels each block by the next level
// (or by its digit at the last level), and asks for every label x whether the
// number of blocks labelled x is strictly above B/p + m or strictly below
// B/p - m. The set S of "above" labels selects the cell through the
// translation-equivariant subset classes S_x. Any block labelled Z, or any
// count inside the closed window [B/p - m, B/p + m], sends the element to Z.
// All comparisons are exact integer arithmetic.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bohrsets/field_group.hpp"

namespace bohrsets {

/// A subset of F_p as a bitmask: bit x is set iff x belongs to the subset.
using SubsetMask = std::uint64_t;

/// Subset classes enumerate all 2^p subsets, so p is kept small.
inline constexpr std::uint32_t kMaxPartitionPrime = 19;

/// A partition of the nonempty proper subsets of F_p into classes
/// S_0, ..., S_{p-1} with S_x + y = S_{x+y} and {x} in S_x. For each
/// translation orbit, the member with the smallest bitmask goes to S_0 and its
/// translate by x to S_x.
class SubsetClassFamily {
 public:
  explicit SubsetClassFamily(Prime p);

  Prime prime() const noexcept { return p_; }
  /// The x with s in S_x. Throws for the empty set and for all of F_p.
  Digit class_of(SubsetMask s) const;
  const std::vector<SubsetMask>& members(Digit x) const { return classes_.at(x); }

  /// T^y s = s + y.
  static SubsetMask translate(SubsetMask s, Digit y, std::uint32_t p) noexcept;

 private:
  Prime p_;
  std::vector<Digit> class_of_;
  std::vector<std::vector<SubsetMask>> classes_;
};

SubsetClassFamily subset_classes(Prime p);
/// Process-wide cached family for p.
std::shared_ptr<const SubsetClassFamily> shared_subset_classes(Prime p);

/// Either Cell(x) for x in F_p, or Z.
class CellLabel {
 public:
  static CellLabel cell(Digit x) noexcept { return CellLabel(x); }
  static CellLabel z() noexcept { return CellLabel(kZ); }
  /// Parses "Z" or a residue.
  static CellLabel parse(std::string_view text);

  bool is_z() const noexcept { return raw_ == kZ; }
  bool is_cell() const noexcept { return raw_ != kZ; }
  Digit value() const;

  /// Cell(x) -> Cell(x + y mod p); Z stays Z.
  CellLabel shifted(Digit y, std::uint32_t p) const noexcept;
  std::string to_string() const;

  friend bool operator==(CellLabel, CellLabel) = default;

 private:
  static constexpr Digit kZ = ~Digit{0};
  explicit CellLabel(Digit raw) noexcept : raw_(raw) {}
  Digit raw_;
};

struct Level {
  unsigned n;
  unsigned m;

  friend bool operator==(const Level&, const Level&) = default;
};

/// The sequence (n_1, m_1), ..., (n_l, m_l) defining P^{n_l}. Scales strictly
/// increase from n_1 >= 1; margins are nonnegative.
class PartitionSpec {
 public:
  PartitionSpec(Prime p, std::vector<Level> levels);

  /// Parses comma-separated "n:m" pairs, e.g. "3:2,6:2".
  static PartitionSpec parse(Prime p, std::string_view text);

  Prime prime() const noexcept { return p_; }
  const std::vector<Level>& levels() const noexcept { return levels_; }
  std::size_t depth() const noexcept { return levels_.size(); }
  /// n_l, the scale of the partitioned group.
  unsigned scale() const noexcept { return levels_.back().n; }
  /// n_i - n_{i-1} (with n_0 = 0) for the zero-based level i.
  unsigned block_scale(std::size_t i) const;

  /// Level i is vacuous when p * m_i >= 2^(n_i - n_{i-1}): condition (iv)
  /// would need a count below zero, so no element satisfies any bias pattern.
  bool is_vacuous(std::size_t i) const;
  bool any_vacuous() const;
  std::vector<std::size_t> vacuous_levels() const;

  /// (n_2 - n_1, m_2), ..., (n_l - n_1, m_l); requires depth() >= 2.
  PartitionSpec tail() const;
  /// The first l levels.
  PartitionSpec prefix(std::size_t l) const;
  PartitionSpec extended(Level next) const;
  /// Margin of zero-based level j lowered by k (requires k <= m_j).
  PartitionSpec with_margin_reduced(std::size_t j, unsigned k) const;
  /// Every margin m_i lowered by k_i.
  PartitionSpec with_margins_reduced(std::span<const unsigned> k) const;

  std::string to_string() const;

  friend bool operator==(const PartitionSpec&, const PartitionSpec&) = default;

 private:
  Prime p_;
  std::vector<Level> levels_;
};

/// Labels restrictions g|_tau, tau in Omega_n, for bias_contains.
using InnerClassifier = std::function<CellLabel(const GroupElement&)>;

/// Bias_n(Y, P, S, m) membership, literally: no restriction g|_tau (tau in
/// Omega_n) is labelled Z, every label in S occurs strictly more than
/// 2^n/p + m times, and every other label strictly fewer than 2^n/p - m times.
bool bias_contains(const GroupElement& g, unsigned count_scale, const InnerClassifier& inner,
                   SubsetMask s, unsigned margin);

/// Classifier for one PartitionSpec. Works in place on contiguous blocks of
/// the packed element and stops at the first Z block.
class Partition {
 public:
  explicit Partition(PartitionSpec spec);

  const PartitionSpec& spec() const noexcept { return spec_; }
  const SubsetClassFamily& family() const noexcept { return *family_; }

  /// Label of g in P^{n_l}. Coarser elements are embedded; finer ones must be
  /// constant on scale-n_l cylinders.
  CellLabel classify(const GroupElement& g) const;

  /// Label from the per-label block counts of one level.
  CellLabel label_from_counts(std::span<const std::uint64_t> counts, unsigned block_scale,
                              unsigned margin) const;

 private:
  CellLabel classify_block(const GroupElement& g, std::size_t offset, std::size_t level,
                           std::span<std::uint64_t> scratch) const;

  PartitionSpec spec_;
  std::shared_ptr<const SubsetClassFamily> family_;
};

CellLabel classify(const GroupElement& g, const PartitionSpec& spec);

/// The (x, S) pairs with S in S_x and g in Bias(..., S, m_1), computed from
/// the definition through bias_contains and a recursive inner classifier.
/// A partition has at most one such pair for every g.
std::vector<std::pair<Digit, SubsetMask>> matching_patterns(const GroupElement& g,
                                                            const PartitionSpec& spec);

/// Classification straight from the definition (the reference route for
/// Partition::classify). Returns Z when no pattern matches; throws
/// std::logic_error if two patterns match.
CellLabel classify_by_definition(const GroupElement& g, const PartitionSpec& spec);

}  // namespace bohrsets
