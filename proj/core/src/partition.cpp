#include "bohrsets/partition.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>
#include <unordered_map>

namespace bohrsets {

namespace {

__extension__ typedef unsigned __int128 u128;

unsigned parse_unsigned(std::string_view text, const char* what) {
  unsigned value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw std::invalid_argument(std::string("bad ") + what + " '" + std::string(text) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Above: p*c > B + p*m.  Below: p*c + p*m < B.
bool above(std::uint64_t c, std::uint64_t blocks, unsigned margin, std::uint32_t p) {
  return u128{p} * c > u128{blocks} + u128{p} * margin;
}
bool below(std::uint64_t c, std::uint64_t blocks, unsigned margin, std::uint32_t p) {
  return u128{p} * c + u128{p} * margin < u128{blocks};
}

GroupElement at_scale(const GroupElement& g, const PartitionSpec& spec) {
  if (!(g.prime() == spec.prime())) throw std::invalid_argument("element and partition differ in p");
  const unsigned n = spec.scale();
  if (g.scale() == n) return g;
  if (g.scale() < n) return embed(g, n);
  if (!g.is_constant_on(n)) {
    throw std::invalid_argument("element of scale " + std::to_string(g.scale()) +
                                " is not constant on scale-" + std::to_string(n) + " cylinders");
  }
  return coarsen(g, n);
}

}  // namespace

// ---------------------------------------------------------------------------

CellLabel CellLabel::parse(std::string_view text) {
  text = trim(text);
  if (text == "Z" || text == "z") return z();
  return cell(parse_unsigned(text, "cell label"));
}

Digit CellLabel::value() const {
  if (is_z()) throw std::logic_error("the Z label has no cell value");
  return raw_;
}

CellLabel CellLabel::shifted(Digit y, std::uint32_t p) const noexcept {
  if (is_z()) return *this;
  return cell(static_cast<Digit>((std::uint64_t{raw_} + y) % p));
}

std::string CellLabel::to_string() const { return is_z() ? "Z" : std::to_string(raw_); }

// ---------------------------------------------------------------------------

PartitionSpec::PartitionSpec(Prime p, std::vector<Level> levels) : p_(p), levels_(std::move(levels)) {
  if (p.value() > kMaxPartitionPrime) {
    throw std::invalid_argument("partitions supported for p <= " + std::to_string(kMaxPartitionPrime));
  }
  if (levels_.empty()) throw std::invalid_argument("partition spec needs at least one level");
  unsigned prev = 0;
  for (const Level& level : levels_) {
    if (level.n <= prev) throw std::invalid_argument("level scales must strictly increase from 1");
    prev = level.n;
  }
  if (prev > kMaxScale) throw std::invalid_argument("partition scale above " + std::to_string(kMaxScale));
}

PartitionSpec PartitionSpec::parse(Prime p, std::string_view text) {
  std::vector<Level> levels;
  while (true) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw std::invalid_argument("level '" + std::string(item) + "' is not of the form n:m");
    }
    levels.push_back({parse_unsigned(trim(item.substr(0, colon)), "level scale"),
                      parse_unsigned(trim(item.substr(colon + 1)), "level margin")});
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return PartitionSpec(p, std::move(levels));
}

unsigned PartitionSpec::block_scale(std::size_t i) const {
  return levels_.at(i).n - (i == 0 ? 0 : levels_[i - 1].n);
}

bool PartitionSpec::is_vacuous(std::size_t i) const {
  return std::uint64_t{p_.value()} * levels_.at(i).m >= (std::uint64_t{1} << block_scale(i));
}

bool PartitionSpec::any_vacuous() const { return !vacuous_levels().empty(); }

std::vector<std::size_t> PartitionSpec::vacuous_levels() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (is_vacuous(i)) out.push_back(i);
  }
  return out;
}

PartitionSpec PartitionSpec::tail() const {
  if (levels_.size() < 2) throw std::logic_error("tail of a single-level spec");
  std::vector<Level> rest;
  for (std::size_t i = 1; i < levels_.size(); ++i) {
    rest.push_back({levels_[i].n - levels_[0].n, levels_[i].m});
  }
  return PartitionSpec(p_, std::move(rest));
}

PartitionSpec PartitionSpec::prefix(std::size_t l) const {
  if (l == 0 || l > levels_.size()) throw std::invalid_argument("prefix length out of range");
  return PartitionSpec(p_, std::vector<Level>(levels_.begin(), levels_.begin() + static_cast<std::ptrdiff_t>(l)));
}

PartitionSpec PartitionSpec::extended(Level next) const {
  std::vector<Level> levels = levels_;
  levels.push_back(next);
  return PartitionSpec(p_, std::move(levels));
}

PartitionSpec PartitionSpec::with_margin_reduced(std::size_t j, unsigned k) const {
  std::vector<Level> levels = levels_;
  if (k > levels.at(j).m) throw std::invalid_argument("margin reduction below zero");
  levels[j].m -= k;
  return PartitionSpec(p_, std::move(levels));
}

PartitionSpec PartitionSpec::with_margins_reduced(std::span<const unsigned> k) const {
  if (k.size() != levels_.size()) throw std::invalid_argument("one margin reduction per level required");
  PartitionSpec out = *this;
  for (std::size_t j = 0; j < k.size(); ++j) out = out.with_margin_reduced(j, k[j]);
  return out;
}

std::string PartitionSpec::to_string() const {
  std::string out;
  for (const Level& level : levels_) {
    if (!out.empty()) out += ',';
    out += std::to_string(level.n) + ':' + std::to_string(level.m);
  }
  return out;
}

// ---------------------------------------------------------------------------

bool bias_contains(const GroupElement& g, unsigned count_scale, const InnerClassifier& inner,
                   SubsetMask s, unsigned margin) {
  if (count_scale > g.scale()) throw std::invalid_argument("count scale above element scale");
  const std::uint32_t p = g.modulus();
  const std::uint64_t blocks = std::uint64_t{1} << count_scale;
  std::vector<std::uint64_t> counts(p, 0);
  for (std::uint64_t t = 0; t < blocks; ++t) {
    const CellLabel label = inner(restrict(g, Cylinder{count_scale, t}));
    if (label.is_z()) return false;
    ++counts.at(label.value());
  }
  for (Digit i = 0; i < p; ++i) {
    const bool in_s = (s >> i) & 1U;
    if (in_s ? !above(counts[i], blocks, margin, p) : !below(counts[i], blocks, margin, p)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Partition::Partition(PartitionSpec spec)
    : spec_(std::move(spec)), family_(shared_subset_classes(spec_.prime())) {}

CellLabel Partition::label_from_counts(std::span<const std::uint64_t> counts, unsigned block_scale,
                                       unsigned margin) const {
  const std::uint32_t p = spec_.prime().value();
  const std::uint64_t blocks = std::uint64_t{1} << block_scale;
  SubsetMask s = 0;
  for (Digit i = 0; i < p; ++i) {
    if (above(counts[i], blocks, margin, p)) {
      s |= SubsetMask{1} << i;
    } else if (!below(counts[i], blocks, margin, p)) {
      return CellLabel::z();
    }
  }
  if (s == 0 || s == (SubsetMask{1} << p) - 1) return CellLabel::z();
  return CellLabel::cell(family_->class_of(s));
}

CellLabel Partition::classify_block(const GroupElement& g, std::size_t offset, std::size_t level,
                                    std::span<std::uint64_t> scratch) const {
  const std::uint32_t p = spec_.prime().value();
  const unsigned delta = spec_.block_scale(level);
  const std::uint64_t blocks = std::uint64_t{1} << delta;
  const std::span<std::uint64_t> counts = scratch.subspan(level * p, p);
  std::fill(counts.begin(), counts.end(), 0);

  if (level + 1 == spec_.depth()) {
    if (p == 2) {
      counts[1] = g.count(offset, blocks, 1);
      counts[0] = blocks - counts[1];
    } else {
      for (std::uint64_t t = 0; t < blocks; ++t) ++counts[g[offset + t]];
    }
  } else {
    const std::size_t sub = std::size_t{1} << (spec_.scale() - spec_.levels()[level].n);
    for (std::uint64_t b = 0; b < blocks; ++b) {
      const CellLabel label = classify_block(g, offset + b * sub, level + 1, scratch);
      if (label.is_z()) return label;
      ++counts[label.value()];
    }
  }
  return label_from_counts(counts, delta, spec_.levels()[level].m);
}

CellLabel Partition::classify(const GroupElement& g) const {
  const GroupElement h = at_scale(g, spec_);
  std::vector<std::uint64_t> scratch(spec_.depth() * spec_.prime().value());
  return classify_block(h, 0, 0, scratch);
}

CellLabel classify(const GroupElement& g, const PartitionSpec& spec) { return Partition(spec).classify(g); }

// ---------------------------------------------------------------------------

std::vector<std::pair<Digit, SubsetMask>> matching_patterns(const GroupElement& g,
                                                            const PartitionSpec& spec) {
  const GroupElement h = at_scale(g, spec);
  InnerClassifier inner;
  if (spec.depth() == 1) {
    inner = [](const GroupElement& block) { return CellLabel::cell(block[0]); };
  } else {
    // Memoised so each restriction is classified once across all patterns.
    auto memo = std::make_shared<std::unordered_map<GroupElement, CellLabel>>();
    const PartitionSpec rest = spec.tail();
    inner = [memo, rest](const GroupElement& block) {
      const auto it = memo->find(block);
      if (it != memo->end()) return it->second;
      const CellLabel label = classify_by_definition(block, rest);
      memo->emplace(block, label);
      return label;
    };
  }
  const auto family = shared_subset_classes(spec.prime());
  std::vector<std::pair<Digit, SubsetMask>> out;
  for (Digit x = 0; x < spec.prime().value(); ++x) {
    for (const SubsetMask s : family->members(x)) {
      if (bias_contains(h, spec.levels()[0].n, inner, s, spec.levels()[0].m)) out.emplace_back(x, s);
    }
  }
  return out;
}

CellLabel classify_by_definition(const GroupElement& g, const PartitionSpec& spec) {
  const auto matches = matching_patterns(g, spec);
  if (matches.size() > 1) throw std::logic_error("element satisfies two bias patterns");
  return matches.empty() ? CellLabel::z() : CellLabel::cell(matches.front().first);
}

}  // namespace bohrsets
