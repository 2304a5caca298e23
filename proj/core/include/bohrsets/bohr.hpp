#pragma once

// Finite-index subgroups of G_p^(N) presented as kernels of d independent
// linear functionals, and coset coverage up to index p^d_max.
//
// A functional is indexed like a group element: its coefficient vector is
// GroupElement::from_index(p, N, index). A set S meets every coset of the
// kernel of rho = (f_1, ..., f_d) iff rho(S) = F_p^d; that property depends
// only on the span of the f_i, so coverage checks visit each kernel once.
// All certificates hold only up to the stated index bound.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "bohrsets/enumeration.hpp"
#include "bohrsets/field_group.hpp"
#include "bohrsets/hamming.hpp"
#include "bohrsets/report.hpp"

namespace bohrsets {

class Functional {
 public:
  explicit Functional(GroupElement coefficients) : coefficients_(std::move(coefficients)) {}
  static Functional from_index(Prime p, unsigned scale, std::uint64_t index) {
    return Functional(GroupElement::from_index(p, scale, index));
  }

  Prime prime() const noexcept { return coefficients_.prime(); }
  unsigned scale() const noexcept { return coefficients_.scale(); }
  const GroupElement& coefficients() const noexcept { return coefficients_; }
  std::uint64_t index() const { return coefficients_.index(); }

  /// sum_t coeff[t] g[t] mod p. Coarser elements are embedded first.
  Digit operator()(const GroupElement& g) const;

 private:
  GroupElement coefficients_;
};

/// Rank over F_p of the given rows (all of equal length).
std::size_t rank_mod_p(std::vector<std::vector<Digit>> rows, Prime p);

/// d linearly independent functionals at a common scale; the kernel has
/// index p^d.
class FunctionalSystem {
 public:
  /// Throws std::invalid_argument for an empty, mixed or dependent list.
  explicit FunctionalSystem(std::vector<Functional> functionals);

  Prime prime() const noexcept { return functionals_.front().prime(); }
  unsigned scale() const noexcept { return functionals_.front().scale(); }
  std::size_t rank() const noexcept { return functionals_.size(); }
  const std::vector<Functional>& functionals() const noexcept { return functionals_; }
  std::vector<std::uint64_t> indices() const;

  /// rho(g) in F_p^d.
  std::vector<Digit> operator()(const GroupElement& g) const;

  /// Coefficient vectors joined by ';', e.g. "2,1:01;2,1:10".
  std::string to_string() const;

 private:
  std::vector<Functional> functionals_;
};

/// Visits every tuple of d independent functionals with increasing indices
/// (so each unordered system once). With `dedup`, only the reduced row
/// echelon basis of each span is visited, i.e. each kernel once. The visitor
/// returns false to stop. Throws BudgetExceeded when the number of tuples
/// may exceed the budget.
void for_each_system(Prime p, unsigned scale, unsigned d, const std::function<bool(const FunctionalSystem&)>& visit,
                     bool dedup = false, Budget budget = {});
std::vector<FunctionalSystem> enumerate_systems(Prime p, unsigned scale, unsigned d, bool dedup = false,
                                                Budget budget = {});

/// The exact image rho(S).
std::set<std::vector<Digit>> image_of(std::span<const GroupElement> members, const FunctionalSystem& system);

/// A subset of G_p^(N) as an indicator over element indices.
class GroupSubset {
 public:
  GroupSubset(Prime p, unsigned scale, Budget budget = {});

  static GroupSubset from_members(Prime p, unsigned scale, std::span<const GroupElement> members,
                                  Budget budget = {});
  /// {g : pred(g)} by enumeration.
  static GroupSubset from_predicate(Prime p, unsigned scale, const std::function<bool(const GroupElement&)>& pred,
                                    Budget budget = {});

  /// Adds g (coarser elements are embedded; finer ones must be constant on
  /// scale-N cylinders).
  void insert(const GroupElement& g);
  bool contains(const GroupElement& g) const;
  bool contains_index(std::uint64_t index) const { return bits_[index] != 0; }

  Prime prime() const noexcept { return p_; }
  unsigned scale() const noexcept { return scale_; }
  std::uint64_t size() const noexcept { return count_; }
  std::uint64_t universe() const noexcept { return bits_.size(); }

  GroupSubset complement() const;
  std::vector<GroupElement> members() const;

 private:
  std::uint64_t index_of(const GroupElement& g) const;

  Prime p_;
  unsigned scale_;
  std::vector<std::uint8_t> bits_;
  std::uint64_t count_ = 0;
};

struct CosetMiss {
  FunctionalSystem system;
  /// A value of F_p^d outside rho(S): S misses that coset of the kernel.
  std::vector<Digit> missing;
};

struct DensityOptions {
  /// Walsh-Hadamard evaluation for p = 2 and d <= 2; otherwise images are
  /// computed member by member.
  bool fast_path = true;
  Budget budget{};
};

struct DensityResult {
  bool dense = true;
  unsigned d_max = 0;
  /// Kernels examined (one per span).
  std::uint64_t kernels_checked = 0;
  std::optional<CosetMiss> miss;
};

/// True iff S meets every coset of every kernel of index p^d, d <= d_max.
/// The first miss is reported for the smallest d.
DensityResult dense_upto(const GroupSubset& s, unsigned d_max, DensityOptions options = {});

struct CosetWitness {
  FunctionalSystem system;
  std::vector<Digit> value;
  /// The smallest-index element g with rho(g) = value.
  GroupElement representative;
};

/// A coset of a kernel of index at most p^d_max contained in D, if any.
std::optional<CosetWitness> contains_coset(const GroupSubset& d, unsigned d_max, DensityOptions options = {});

/// Records for: U(n,1) spans G_p^(n); U(n,1) is closed under scalars; sums
/// of d members of U(n,1) lie in U(n,d); rho(U(n,d)) = F_p^d' for every
/// system of rank d' <= d.
std::vector<CheckRecord> verify_hamming_generation(Prime p, unsigned n, unsigned d, Budget budget = {});

}  // namespace bohrsets
