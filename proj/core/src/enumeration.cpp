#include "bohrsets/enumeration.hpp"

#include <algorithm>

namespace bohrsets {

mpz_class group_order(Prime p, unsigned scale) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), p.value(), 1UL << scale);
  return out;
}

void require_within(const mpz_class& count, Budget budget, const std::string& what) {
  mpz_class limit;
  mpz_import(limit.get_mpz_t(), 1, 1, sizeof(budget.limit), 0, 0, &budget.limit);
  if (count > limit) throw BudgetExceeded(what + " (" + count.get_str() + " items)");
}

std::uint64_t group_order_u64(Prime p, unsigned scale) noexcept {
  const std::uint64_t digits = 1ULL << scale;
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < digits; ++i) {
    if (out > (~0ULL) / p.value()) return 0;
    out *= p.value();
  }
  return out;
}

GroupRange::GroupRange(Prime p, unsigned scale, std::uint64_t first, std::uint64_t last)
    : p_(p), scale_(scale), first_(first), last_(last) {
  if (first > last) throw std::invalid_argument("empty range bounds reversed");
  const std::uint64_t order = group_order_u64(p, scale);
  if (order == 0 || last > order) throw std::invalid_argument("range exceeds group order");
}

GroupRange::iterator GroupRange::begin() const {
  if (first_ == last_) return end();
  return iterator(GroupElement::from_index(p_, scale_, first_), first_);
}

GroupRange::iterator GroupRange::end() const { return iterator(GroupElement(p_, 0), last_); }

std::vector<GroupRange> GroupRange::split(std::uint64_t parts) const {
  parts = std::max<std::uint64_t>(1, std::min(parts, std::max<std::uint64_t>(1, size())));
  std::vector<GroupRange> out;
  out.reserve(parts);
  const std::uint64_t base = size() / parts;
  const std::uint64_t extra = size() % parts;
  std::uint64_t at = first_;
  for (std::uint64_t i = 0; i < parts; ++i) {
    const std::uint64_t len = base + (i < extra ? 1 : 0);
    out.emplace_back(p_, scale_, at, at + len);
    at += len;
  }
  return out;
}

GroupRange enumerate_group(Prime p, unsigned scale, Budget budget) {
  require_within(group_order(p, scale), budget, "enumerating G_" + std::to_string(p.value()) +
                                                    "^(" + std::to_string(scale) + ")");
  const std::uint64_t order = group_order_u64(p, scale);
  if (order == 0) throw BudgetExceeded("group order above 2^64");
  return GroupRange(p, scale, 0, order);
}

std::vector<GroupElement> all_elements(Prime p, unsigned scale, Budget budget) {
  const GroupRange range = enumerate_group(p, scale, budget);
  std::vector<GroupElement> out;
  out.reserve(range.size());
  for (const auto& g : range) out.push_back(g);
  return out;
}

}  // namespace bohrsets
