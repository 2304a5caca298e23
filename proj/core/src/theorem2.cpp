#include <algorithm>
#include <bit>
#include <stdexcept>

#include "bohrsets/construction.hpp"
#include "bohrsets/enumeration.hpp"
#include "bohrsets/parallel.hpp"
#include "bohrsets/random.hpp"

namespace bohrsets {

namespace {

struct DifferenceTable {
  DifferenceTable(Prime p, unsigned N) : p(p), N(N) {
    order = group_order_u64(p, N);
    if (order == 0 || order > 4096) throw BudgetExceeded("difference table for G_p^(N)");
    for (std::uint64_t i = 0; i < order; ++i) elements.push_back(GroupElement::from_index(p, N, i));
    diff.resize(order * order);
    for (std::uint64_t a = 0; a < order; ++a) {
      for (std::uint64_t b = 0; b < order; ++b) diff[a * order + b] = static_cast<std::uint32_t>((elements[a] - elements[b]).index());
    }
  }

  /// |A - A| for A given by element indices.
  std::uint64_t difference_count(const std::vector<std::uint32_t>& a) const {
    std::vector<std::uint8_t> seen(order, 0);
    std::uint64_t count = 0;
    for (const std::uint32_t x : a) {
      for (const std::uint32_t y : a) {
        std::uint8_t& s = seen[diff[x * order + y]];
        if (!s) {
          s = 1;
          if (++count == order) return count;
        }
      }
    }
    return count;
  }

  std::string describe(const std::vector<std::uint32_t>& a) const {
    std::string out = "A={";
    for (std::size_t i = 0; i < a.size(); ++i) out += (i ? "," : "") + elements[a[i]].to_string();
    return out + "}";
  }

  Prime p;
  unsigned N;
  std::uint64_t order = 0;
  std::vector<GroupElement> elements;
  std::vector<std::uint32_t> diff;
};

}  // namespace

std::vector<CheckRecord> theorem2_brute(Prime p, unsigned N, const VerifyOptions& options) {
  const DifferenceTable table(p, N);
  const std::uint64_t order = table.order;
  const mpq_class threshold = delta(p) * mpq_class(static_cast<unsigned long>(order));
  const mpz_class floor_threshold = threshold.get_num() / threshold.get_den();
  const std::uint64_t min_size = floor_threshold.get_ui() + 1;
  const KeyValues params = {{"p", std::to_string(p.value())}, {"N", std::to_string(N)}};

  CheckRecord main;
  main.check = "difference-threshold";
  main.lemma_tag = "large-difference-set";
  main.params = params;
  main.mode = to_string(options.mode);
  Tally tally;
  if (options.mode == Mode::exhaustive) {
    if (order > 62) throw BudgetExceeded("exhaustive subsets of a group of order " + std::to_string(order));
    mpz_class subsets;
    mpz_ui_pow_ui(subsets.get_mpz_t(), 2, order);
    require_within(subsets, options.budget, "subsets of G_p^(N)");
    std::vector<std::uint32_t> a;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << order); ++mask) {
      if (static_cast<std::uint64_t>(std::popcount(mask)) < min_size) continue;
      a.clear();
      for (std::uint64_t i = 0; i < order; ++i) {
        if ((mask >> i) & 1) a.push_back(static_cast<std::uint32_t>(i));
      }
      tally.check(table.difference_count(a) == order, [&] { return table.describe(a) + ": A-A is not everything"; });
    }
    main.exact_values.emplace_back("subsets", subsets.get_str());
  } else {
    const std::uint64_t batches = (options.samples + kSampleBatch - 1) / kSampleBatch;
    std::vector<Tally> partial(batches);
    parallel_for(batches, [&](std::size_t b) {
      SplitRng rng = SplitRng(options.seed).split(0).split(b);
      const std::uint64_t count = std::min<std::uint64_t>(kSampleBatch, options.samples - b * kSampleBatch);
      std::vector<std::uint32_t> pool(order);
      for (std::uint64_t t = 0; t < count; ++t) {
        const std::uint64_t size = min_size + rng.below(order - min_size + 1);
        for (std::uint64_t i = 0; i < order; ++i) pool[i] = static_cast<std::uint32_t>(i);
        for (std::uint64_t i = 0; i < size; ++i) std::swap(pool[i], pool[i + rng.below(order - i)]);
        std::vector<std::uint32_t> a(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
        std::sort(a.begin(), a.end());
        partial[b].check(table.difference_count(a) == order, [&] { return table.describe(a) + ": A-A is not everything"; });
      }
    });
    for (const auto& t : partial) tally.merge(t);
  }
  tally.fill(main);
  main.exact_values.emplace_back("group", std::to_string(order));
  main.exact_values.emplace_back("min_size", std::to_string(min_size));

  // Sharpness: the coset {g : g[last] = 1} of an index-p subgroup.
  CheckRecord sharp;
  sharp.check = "difference-threshold-sharpness";
  sharp.lemma_tag = "large-difference-set";
  sharp.params = params;
  sharp.mode = "exhaustive";
  std::vector<std::uint32_t> coset;
  for (std::uint64_t i = 0; i < order; ++i) {
    if (table.elements[i][table.elements[i].size() - 1] == 1) coset.push_back(static_cast<std::uint32_t>(i));
  }
  const std::uint64_t differences = table.difference_count(coset);
  Tally sharp_tally;
  sharp_tally.check(differences < order && coset.size() < min_size,
                    [&] { return table.describe(coset) + ": coset of size " + std::to_string(coset.size()); });
  sharp_tally.fill(sharp);
  sharp.exact_values = {{"coset_size", std::to_string(coset.size())},
                        {"difference_set_size", std::to_string(differences)},
                        {"group", std::to_string(order)}};
  return {main, sharp};
}

WindowResult window_density(const std::vector<GroupElement>& A, const std::vector<GroupElement>& F, Prime p,
                            unsigned N) {
  const std::uint64_t order = group_order_u64(p, N);
  if (order == 0 || order > (std::uint64_t{1} << 24)) throw BudgetExceeded("window search over G_p^(N)");
  std::vector<std::uint8_t> in_a(order, 0);
  for (const GroupElement& a : A) in_a[embed(a, std::max(a.scale(), N)).index()] = 1;
  std::vector<GroupElement> f_members;
  {
    std::vector<std::uint8_t> in_f(order, 0);
    for (const GroupElement& f : F) {
      const GroupElement h = f.scale() < N ? embed(f, N) : f;
      if (!in_f[h.index()]) f_members.push_back(h);
      in_f[h.index()] = 1;
    }
  }
  const auto a_size = static_cast<std::uint64_t>(std::count(in_a.begin(), in_a.end(), 1));

  WindowResult out{GroupElement(p, N)};
  bool first = true;
  for (std::uint64_t gi = 0; gi < order; ++gi) {
    const GroupElement g = GroupElement::from_index(p, N, gi);
    std::uint64_t count = 0;
    for (const GroupElement& f : f_members) count += in_a[(f + g).index()];
    if (first || count > out.count) {
      out.g = g;
      out.count = count;
      first = false;
    }
  }
  const std::uint64_t numerator = a_size * f_members.size();
  out.bound = (numerator + order - 1) / order;
  out.meets_bound = out.count >= out.bound;
  return out;
}

}  // namespace bohrsets
