#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "bohrsets/partition.hpp"

namespace bohrsets {

SubsetMask SubsetClassFamily::translate(SubsetMask s, Digit y, std::uint32_t p) noexcept {
  const SubsetMask full = (SubsetMask{1} << p) - 1;
  y %= p;
  if (y == 0) return s;
  return ((s << y) | (s >> (p - y))) & full;
}

SubsetClassFamily::SubsetClassFamily(Prime p) : p_(p) {
  const std::uint32_t q = p.value();
  if (q > kMaxPartitionPrime) {
    throw std::invalid_argument("subset classes supported for p <= " +
                                std::to_string(kMaxPartitionPrime));
  }
  const SubsetMask full = (SubsetMask{1} << q) - 1;
  class_of_.assign(full + 1, q);
  classes_.assign(q, {});
  // Ascending scan: the first unassigned mask of an orbit is its minimum.
  for (SubsetMask s = 1; s < full; ++s) {
    if (class_of_[s] != q) continue;
    for (Digit x = 0; x < q; ++x) {
      const SubsetMask t = translate(s, x, q);
      if (class_of_[t] != q) throw std::logic_error("translation orbit shorter than p");
      class_of_[t] = x;
      classes_[x].push_back(t);
    }
  }
}

Digit SubsetClassFamily::class_of(SubsetMask s) const {
  if (s >= class_of_.size() || class_of_[s] == p_.value()) {
    throw std::invalid_argument("subset must be nonempty and proper");
  }
  return class_of_[s];
}

SubsetClassFamily subset_classes(Prime p) { return SubsetClassFamily(p); }

std::shared_ptr<const SubsetClassFamily> shared_subset_classes(Prime p) {
  static std::mutex mutex;
  static std::map<std::uint32_t, std::shared_ptr<const SubsetClassFamily>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[p.value()];
  if (!slot) slot = std::make_shared<const SubsetClassFamily>(p);
  return slot;
}

}  // namespace bohrsets
