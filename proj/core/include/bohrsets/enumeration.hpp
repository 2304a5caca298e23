#pragma once

#include <cstdint>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "bohrsets/field_group.hpp"

namespace bohrsets {

/// Caps the number of items an exhaustive routine may visit.
struct Budget {
  static constexpr std::uint64_t kDefault = 1ULL << 32;
  std::uint64_t limit = kDefault;
};

/// Raised when an exhaustive request exceeds its budget; callers should fall
/// back to sampling.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what)
      : std::runtime_error(what + " exceeds the enumeration budget; use sampling instead") {}
};

/// |G_p^(n)| = p^(2^n).
mpz_class group_order(Prime p, unsigned scale);

/// Throws BudgetExceeded when `count` is above the budget.
void require_within(const mpz_class& count, Budget budget, const std::string& what);

/// p^(2^n) as a 64-bit integer, or 0 when it does not fit.
std::uint64_t group_order_u64(Prime p, unsigned scale) noexcept;

/// A lexicographically ordered slice [first, last) of G_p^(n).
class GroupRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = GroupElement;
    using difference_type = std::ptrdiff_t;
    using pointer = const GroupElement*;
    using reference = const GroupElement&;

    iterator(GroupElement current, std::uint64_t position)
        : current_(std::move(current)), position_(position) {}

    reference operator*() const noexcept { return current_; }
    pointer operator->() const noexcept { return &current_; }
    iterator& operator++() noexcept {
      current_.increment();
      ++position_;
      return *this;
    }
    std::uint64_t position() const noexcept { return position_; }

    friend bool operator==(const iterator& a, const iterator& b) noexcept {
      return a.position_ == b.position_;
    }

   private:
    GroupElement current_;
    std::uint64_t position_;
  };

  GroupRange(Prime p, unsigned scale, std::uint64_t first, std::uint64_t last);

  iterator begin() const;
  iterator end() const;

  Prime prime() const noexcept { return p_; }
  unsigned scale() const noexcept { return scale_; }
  std::uint64_t first() const noexcept { return first_; }
  std::uint64_t last() const noexcept { return last_; }
  std::uint64_t size() const noexcept { return last_ - first_; }

  /// Splits into `parts` disjoint contiguous sub-ranges covering this one.
  std::vector<GroupRange> split(std::uint64_t parts) const;

 private:
  Prime p_;
  unsigned scale_;
  std::uint64_t first_;
  std::uint64_t last_;
};

/// Every element of G_p^(n) in lexicographic digit order.
GroupRange enumerate_group(Prime p, unsigned scale, Budget budget = {});

/// Materialises enumerate_group into a vector.
std::vector<GroupElement> all_elements(Prime p, unsigned scale, Budget budget = {});

}  // namespace bohrsets
