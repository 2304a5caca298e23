#include "bohrsets/partition_sample.hpp"

#include <stdexcept>

namespace bohrsets {

CellSampler::CellSampler(PartitionSpec spec, Budget budget) : spec_(std::move(spec)) {
  if (spec_.any_vacuous()) {
    throw std::invalid_argument("cannot sample from " + spec_.to_string() + ": level " +
                                std::to_string(spec_.vacuous_levels().front() + 1) + " is vacuous");
  }
  const Prime p = spec_.prime();
  for (std::size_t i = 0; i < spec_.depth(); ++i) {
    const unsigned delta = spec_.block_scale(i);
    const Partition base(PartitionSpec(p, {{delta, spec_.levels()[i].m}}));
    std::vector<std::vector<GroupElement>> table(p.value());
    for (const GroupElement& g : enumerate_group(p, delta, budget)) {
      const CellLabel label = base.classify(g);
      if (label.is_cell()) table[label.value()].push_back(g);
    }
    tables_.push_back(std::move(table));
  }
}

GroupElement CellSampler::sample_prefix(std::size_t l, Digit x, SplitRng& rng) const {
  if (l == 0 || l > spec_.depth()) throw std::invalid_argument("prefix length out of range");
  if (x >= spec_.prime().value()) throw std::invalid_argument("cell label out of range");
  const auto pick = [&](std::size_t level, Digit label) -> const GroupElement& {
    const auto& cell = tables_[level][label];
    return cell[rng.below(cell.size())];
  };
  if (l == 1) return pick(0, x);

  const GroupElement coarse = sample_prefix(l - 1, x, rng);
  const unsigned delta = spec_.block_scale(l - 1);
  const std::size_t width = std::size_t{1} << delta;
  std::vector<Digit> digits(coarse.size() * width);
  for (std::size_t tau = 0; tau < coarse.size(); ++tau) {
    const GroupElement& block = pick(l - 1, coarse[tau]);
    for (std::size_t t = 0; t < width; ++t) digits[tau * width + t] = block[t];
  }
  return GroupElement::from_digits(spec_.prime(), spec_.levels()[l - 1].n, digits);
}

GroupElement sample_cell(const PartitionSpec& spec, FieldValue x, SplitRng& rng) {
  if (!(x.prime() == spec.prime())) throw std::invalid_argument("label and partition differ in p");
  return CellSampler(spec).sample(x.value(), rng);
}

}  // namespace bohrsets
