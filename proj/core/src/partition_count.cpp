#include "bohrsets/partition_count.hpp"

#include <bit>
#include <cfloat>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "bohrsets/enumeration.hpp"

namespace bohrsets {

namespace {

constexpr long double kNegInf = -std::numeric_limits<long double>::infinity();

struct Range {
  std::uint64_t lo;
  std::uint64_t hi;  // inclusive; empty when lo > hi
  bool contains(std::uint64_t c) const { return lo <= c && c <= hi; }
};

// Counts c in [0, B] with p*c > B + p*m, and with p*c + p*m < B.
Range high_range(std::uint64_t blocks, std::uint64_t p, std::uint64_t margin) {
  return {(blocks + p * margin) / p + 1, blocks};
}
Range low_range(std::uint64_t blocks, std::uint64_t p, std::uint64_t margin) {
  if (blocks <= p * margin) return {1, 0};
  return {0, (blocks - p * margin - 1) / p};
}

std::vector<Range> label_ranges(std::uint64_t blocks, std::uint32_t p, unsigned margin, unsigned s) {
  std::vector<Range> ranges;
  for (unsigned i = 0; i < p; ++i) {
    ranges.push_back(i < s ? high_range(blocks, p, margin) : low_range(blocks, p, margin));
  }
  return ranges;
}

long double log_add(long double a, long double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

long double log_binomial(std::uint64_t n, std::uint64_t k) {
  return std::lgamma(static_cast<long double>(n) + 1) - std::lgamma(static_cast<long double>(k) + 1) -
         std::lgamma(static_cast<long double>(n - k) + 1);
}

// Natural log of pattern_words, with an error bound on that log.
std::pair<long double, long double> pattern_words_log(std::uint32_t p, unsigned block_scale,
                                                      unsigned margin, unsigned s) {
  if (s == 0 || s >= p) return {kNegInf, 0};
  const std::uint64_t blocks = std::uint64_t{1} << block_scale;
  const auto ranges = label_ranges(blocks, p, margin, s);
  std::vector<long double> f(blocks + 1, kNegInf);
  for (std::uint64_t t = 0; t <= blocks; ++t) {
    if (ranges[0].contains(t)) f[t] = 0;
  }
  for (unsigned k = 1; k + 1 < p; ++k) {
    std::vector<long double> next(blocks + 1, kNegInf);
    for (std::uint64_t t = 0; t <= blocks; ++t) {
      for (std::uint64_t c = ranges[k].lo; c <= std::min(t, ranges[k].hi); ++c) {
        if (f[t - c] != kNegInf) next[t] = log_add(next[t], f[t - c] + log_binomial(t, c));
      }
    }
    f = std::move(next);
  }
  long double out = kNegInf;
  for (std::uint64_t c = ranges[p - 1].lo; c <= ranges[p - 1].hi; ++c) {
    if (f[blocks - c] != kNegInf) out = log_add(out, f[blocks - c] + log_binomial(blocks, c));
  }
  const long double ops = static_cast<long double>(p) * static_cast<long double>(blocks + 1) + 4;
  const long double error = 8 * ops * LDBL_EPSILON * (std::fabs(out == kNegInf ? 0 : out) + 1);
  return {out, error};
}

}  // namespace

mpz_class pattern_words(Prime prime, unsigned block_scale, unsigned margin, unsigned s) {
  const std::uint32_t p = prime.value();
  if (s == 0 || s >= p) return 0;
  const std::uint64_t blocks = std::uint64_t{1} << block_scale;
  const auto ranges = label_ranges(blocks, p, margin, s);
  // f[t]: words of length t over the labels handled so far, each within range.
  std::vector<mpz_class> f(blocks + 1, 0);
  for (std::uint64_t t = 0; t <= blocks; ++t) {
    if (ranges[0].contains(t)) f[t] = 1;
  }
  if (p > 2) {
    // Middle labels: sweep t upward, keeping Pascal's row t and one table per label.
    std::vector<std::vector<mpz_class>> g(p - 2, std::vector<mpz_class>(blocks + 1, 0));
    std::vector<mpz_class> row(blocks + 1, 0);
    row[0] = 1;
    for (std::uint64_t t = 0; t <= blocks; ++t) {
      if (t > 0) {
        for (std::uint64_t c = t; c > 0; --c) row[c] += row[c - 1];
      }
      for (unsigned k = 1; k + 1 < p; ++k) {
        const std::vector<mpz_class>& prev = k == 1 ? f : g[k - 2];
        mpz_class& out = g[k - 1][t];
        for (std::uint64_t c = ranges[k].lo; c <= std::min(t, ranges[k].hi); ++c) {
          if (sgn(prev[t - c]) != 0) out += prev[t - c] * row[c];
        }
      }
    }
    f = std::move(g.back());
  }
  mpz_class out = 0;
  mpz_class binom;
  for (std::uint64_t c = ranges[p - 1].lo; c <= ranges[p - 1].hi; ++c) {
    if (sgn(f[blocks - c]) == 0) continue;
    mpz_bin_uiui(binom.get_mpz_t(), blocks, c);
    out += f[blocks - c] * binom;
  }
  return out;
}

mpz_class PartitionCounts::size_of(CellLabel label) const {
  if (!exact) throw std::logic_error("counts were computed in log space");
  return label.is_z() ? z : cell;
}

mpq_class PartitionCounts::cell_fraction() const {
  if (!exact) throw std::logic_error("counts were computed in log space");
  mpq_class out(cell, group);
  out.canonicalize();
  return out;
}

double PartitionCounts::cell_fraction_approx() const {
  if (exact) return cell_fraction().get_d();
  return static_cast<double>(std::exp2(log2_cell - log2_group));
}

PartitionCounts count_partition(const PartitionSpec& spec, CountOptions options) {
  const std::uint32_t p = spec.prime().value();
  const auto family = shared_subset_classes(spec.prime());
  PartitionCounts out;
  out.vacuous_levels = spec.vacuous_levels();
  out.log2_group = std::ldexp(std::log2(static_cast<long double>(p)), static_cast<int>(spec.scale()));
  out.exact = out.log2_group <= static_cast<long double>(options.max_exact_bits);

  // Innermost children are single digits: one member per label, p in all.
  mpz_class child_cell = 1;
  mpz_class child_group = p;
  long double child_log = 0;
  long double child_error = 0;
  for (std::size_t i = spec.depth(); i-- > 0;) {
    const unsigned delta = spec.block_scale(i);
    const unsigned margin = spec.levels()[i].m;
    const std::uint64_t blocks = std::uint64_t{1} << delta;
    std::map<unsigned, std::size_t> sizes;  // |S| -> multiplicity within S_0
    for (const SubsetMask s : family->members(0)) ++sizes[static_cast<unsigned>(std::popcount(s))];

    if (out.exact) {
      mpz_class words = 0;
      for (const auto& [s, mult] : sizes) words += pattern_words(spec.prime(), delta, margin, s) * mult;
      mpz_class cell;
      mpz_pow_ui(cell.get_mpz_t(), child_cell.get_mpz_t(), blocks);
      child_cell = cell * words;
      mpz_class group;
      mpz_pow_ui(group.get_mpz_t(), child_group.get_mpz_t(), blocks);
      child_group = group;
    } else {
      long double log_words = kNegInf;
      long double words_error = 0;
      for (const auto& [s, mult] : sizes) {
        const auto [value, error] = pattern_words_log(p, delta, margin, s);
        if (value == kNegInf) continue;
        log_words = log_add(log_words, value + std::log(static_cast<long double>(mult)));
        words_error = std::max(words_error, error);
      }
      if (log_words == kNegInf || child_log == kNegInf) {
        child_log = kNegInf;
        child_error = 0;
      } else {
        child_log = static_cast<long double>(blocks) * child_log + log_words / std::log(2.0L);
        child_error = static_cast<long double>(blocks) * child_error + words_error / std::log(2.0L) +
                      4 * LDBL_EPSILON * std::fabs(child_log);
      }
    }
  }

  if (out.exact) {
    out.cell = child_cell;
    out.group = child_group;
    out.z = out.group - out.cell * p;
    out.log2_cell = kNegInf;
    if (sgn(out.cell) != 0) {
      long exponent = 0;
      const double mantissa = mpz_get_d_2exp(&exponent, out.cell.get_mpz_t());
      out.log2_cell = std::log2(static_cast<long double>(mantissa)) + exponent;
    }
  } else {
    out.log2_cell = child_log;
    out.log2_error = child_error;
  }
  return out;
}

mpz_class count_cell(const PartitionSpec& spec, CellLabel label, CountOptions options) {
  if (label.is_cell() && label.value() >= spec.prime().value()) {
    throw std::invalid_argument("cell label out of range");
  }
  const PartitionCounts counts = count_partition(spec, options);
  if (!counts.exact) throw BudgetExceeded("exact count of a scale-" + std::to_string(spec.scale()) + " partition");
  return counts.size_of(label);
}

mpz_class z_bound(Prime prime, unsigned n, unsigned m) {
  const std::int64_t p = prime.value();
  const std::int64_t blocks = std::int64_t{1} << n;
  const std::int64_t pm = p * static_cast<std::int64_t>(m);
  const auto floor_div = [](std::int64_t a, std::int64_t b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
  const std::int64_t lower_floor = floor_div(blocks - pm, p);
  // Integers t with B/p - m <= t <= B/p + m, clipped to [0, B].
  const std::int64_t lo = std::max<std::int64_t>(0, -floor_div(-(blocks - pm), p));
  const std::int64_t hi = std::min<std::int64_t>(blocks, floor_div(blocks + pm, p));
  mpz_class max_binom = 0;
  mpz_class binom;
  for (std::int64_t t = lo; t <= hi; ++t) {
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(blocks), static_cast<unsigned long>(t));
    if (binom > max_binom) max_binom = binom;
  }
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(p - 1),
                static_cast<unsigned long>(blocks - lower_floor));
  return mpz_class(p) * (2 * static_cast<long>(m) + 1) * power * max_binom;
}

mpz_class concatenation_bound(const PartitionSpec& spec, CountOptions options) {
  const std::size_t l = spec.depth();
  if (l < 2) throw std::invalid_argument("concatenation bound needs at least two levels");
  const PartitionSpec previous = spec.prefix(l - 1);
  const PartitionSpec base(spec.prime(), {{spec.block_scale(l - 1), spec.levels()[l - 1].m}});
  const mpz_class prev_cell = count_cell(previous, CellLabel::cell(0), options);
  const mpz_class base_cell = count_cell(base, CellLabel::cell(0), options);
  mpz_class power;
  mpz_pow_ui(power.get_mpz_t(), base_cell.get_mpz_t(), std::uint64_t{1} << previous.scale());
  return prev_cell * power;
}

}  // namespace bohrsets
