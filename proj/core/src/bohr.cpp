#include "bohrsets/bohr.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "bohrsets/parallel.hpp"

namespace bohrsets {

namespace {

GroupElement at_scale(const GroupElement& g, Prime p, unsigned scale) {
  if (!(g.prime() == p)) throw std::invalid_argument("element has a different prime");
  if (g.scale() == scale) return g;
  if (g.scale() < scale) return embed(g, scale);
  if (!g.is_constant_on(scale)) throw std::invalid_argument("element finer than the functional scale");
  return coarsen(g, scale);
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  for (std::uint64_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return result;
}

// Reduced row echelon form over F_p; zero rows dropped.
std::vector<std::vector<Digit>> rref(std::vector<std::vector<Digit>> rows, std::uint64_t p) {
  std::size_t rank = 0;
  const std::size_t width = rows.empty() ? 0 : rows.front().size();
  for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const std::uint64_t inv = inverse_mod(rows[rank][col], p);
    for (Digit& v : rows[rank]) v = static_cast<Digit>(v * inv % p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const std::uint64_t factor = rows[r][col];
      for (std::size_t c = col; c < width; ++c) {
        rows[r][c] = static_cast<Digit>((rows[r][c] + (p - factor) * rows[rank][c]) % p);
      }
    }
    ++rank;
  }
  rows.resize(rank);
  return rows;
}

std::uint64_t power(std::uint64_t base, unsigned exponent) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

std::vector<Digit> decode(std::uint64_t code, std::uint32_t p, std::size_t d) {
  std::vector<Digit> out(d);
  for (std::size_t i = 0; i < d; ++i) {
    out[i] = static_cast<Digit>(code % p);
    code /= p;
  }
  return out;
}

std::string digits_to_string(const std::vector<Digit>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

struct Uncovered {
  std::uint64_t kernels = 0;
  std::optional<CosetMiss> miss;
};

// Walsh-Hadamard transform of the indicator: w[f] = sum_{s in S} (-1)^{f.s}.
std::vector<std::int64_t> walsh_hadamard(const GroupSubset& s) {
  std::vector<std::int64_t> w(s.universe());
  for (std::uint64_t i = 0; i < w.size(); ++i) w[i] = s.contains_index(i) ? 1 : 0;
  for (std::uint64_t h = 1; h < w.size(); h <<= 1) {
    for (std::uint64_t i = 0; i < w.size(); i += h << 1) {
      for (std::uint64_t j = i; j < i + h; ++j) {
        const std::int64_t a = w[j];
        const std::int64_t b = w[j + h];
        w[j] = a + b;
        w[j + h] = a - b;
      }
    }
  }
  return w;
}

FunctionalSystem system_of(Prime p, unsigned scale, std::initializer_list<std::uint64_t> indices) {
  std::vector<Functional> fs;
  for (const std::uint64_t i : indices) fs.push_back(Functional::from_index(p, scale, i));
  return FunctionalSystem(std::move(fs));
}

// p = 2, d = 1: kernels are the nonzero f; S meets both cosets iff |w[f]| < |S|.
Uncovered fast_rank_one(const GroupSubset& s, const std::vector<std::int64_t>& w) {
  const auto total = static_cast<std::int64_t>(s.size());
  Uncovered out;
  for (std::uint64_t f = 1; f < w.size(); ++f) {
    ++out.kernels;
    const std::int64_t even = (total + w[f]) / 2;
    if (even > 0 && even < total) continue;
    out.miss = CosetMiss{system_of(s.prime(), s.scale(), {f}), {even == 0 ? Digit{0} : Digit{1}}};
    return out;
  }
  return out;
}

// p = 2, d = 2: each span {i, j, i^j} is visited once as i < j < i^j, which
// holds iff j > i and j lacks the top bit of i.
Uncovered fast_rank_two(const GroupSubset& s, const std::vector<std::int64_t>& w) {
  const std::uint64_t m = w.size();
  const auto total = static_cast<std::int64_t>(s.size());
  const auto spans_for = [m](std::uint64_t i) {
    const std::uint64_t top = std::uint64_t{1} << (std::bit_width(i) - 1);
    return (m - 2 * top) / 2;
  };
  // Smallest i with a miss, and its first miss.
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  std::vector<std::pair<std::uint64_t, std::uint64_t>> found(m, {0, 0});  // (j, code + 1)
  parallel_for(m > 0 ? m - 1 : 0, [&](std::size_t task) {
    const std::uint64_t i = task + 1;
    if (i > best.load()) return;
    const std::uint64_t top = std::uint64_t{1} << (std::bit_width(i) - 1);
    for (std::uint64_t base = 2 * top; base < m; base += 2 * top) {
      for (std::uint64_t j = base; j < base + top; ++j) {
        const std::int64_t a = w[i];
        const std::int64_t b = w[j];
        const std::int64_t c = w[i ^ j];
        // 4 * #{s : (i.s, j.s) = (v1, v2)} = |S| + s1 a + s2 b + s1 s2 c, s = (-1)^v.
        const std::int64_t n[4] = {total + a + b + c, total - a + b - c, total + a - b - c, total - a - b + c};
        for (std::uint64_t code = 0; code < 4; ++code) {
          if (n[code] > 0) continue;
          found[i] = {j, code + 1};
          std::uint64_t current = best.load();
          while (i < current && !best.compare_exchange_weak(current, i)) {
          }
          return;
        }
      }
    }
  });

  Uncovered out;
  const std::uint64_t i = best.load();
  if (i == std::numeric_limits<std::uint64_t>::max()) {
    for (std::uint64_t k = 1; k < m; ++k) out.kernels += spans_for(k);
    return out;
  }
  for (std::uint64_t k = 1; k < i; ++k) out.kernels += spans_for(k);
  const auto [j, code] = found[i];
  const std::uint64_t top = std::uint64_t{1} << (std::bit_width(i) - 1);
  // Position of j among the admissible partners of i.
  out.kernels += (j / (2 * top) - 1) * top + (j % (2 * top)) + 1;
  out.miss = CosetMiss{system_of(s.prime(), s.scale(), {i, j}), decode(code - 1, 2, 2)};
  return out;
}

Uncovered generic_rank(const GroupSubset& s, unsigned d, Budget budget) {
  const std::uint32_t p = s.prime().value();
  const std::uint64_t values = power(p, d);
  const std::vector<GroupElement> members = s.members();
  Uncovered out;
  std::vector<std::uint8_t> seen(values);
  for_each_system(
      s.prime(), s.scale(), d,
      [&](const FunctionalSystem& system) {
        ++out.kernels;
        std::fill(seen.begin(), seen.end(), 0);
        std::uint64_t hit = 0;
        for (const GroupElement& g : members) {
          std::uint64_t code = 0;
          std::uint64_t scale = 1;
          for (const Functional& f : system.functionals()) {
            code += f(g) * scale;
            scale *= p;
          }
          if (!seen[code]) {
            seen[code] = 1;
            if (++hit == values) return true;
          }
        }
        const auto missing = static_cast<std::uint64_t>(std::find(seen.begin(), seen.end(), 0) - seen.begin());
        out.miss = CosetMiss{system, decode(missing, p, d)};
        return false;
      },
      true, budget);
  return out;
}

Uncovered first_uncovered(const GroupSubset& s, unsigned d_max, const DensityOptions& options) {
  Uncovered total;
  const bool fast = options.fast_path && s.prime().value() == 2 && s.universe() <= (std::uint64_t{1} << 26);
  std::vector<std::int64_t> w;
  if (fast) w = walsh_hadamard(s);
  for (unsigned d = 1; d <= d_max; ++d) {
    Uncovered level;
    if (fast && d == 1) {
      level = fast_rank_one(s, w);
    } else if (fast && d == 2) {
      level = fast_rank_two(s, w);
    } else {
      level = generic_rank(s, d, options.budget);
    }
    total.kernels += level.kernels;
    if (level.miss) {
      total.miss = std::move(level.miss);
      return total;
    }
  }
  return total;
}

}  // namespace

// ---------------------------------------------------------------------------

Digit Functional::operator()(const GroupElement& g) const {
  const GroupElement h = at_scale(g, prime(), scale());
  const std::uint64_t p = prime().value();
  std::uint64_t acc = 0;
  for (std::size_t t = 0; t < h.size(); ++t) {
    const Digit c = coefficients_[t];
    if (c != 0) acc = (acc + std::uint64_t{c} * h[t]) % p;
  }
  return static_cast<Digit>(acc);
}

std::size_t rank_mod_p(std::vector<std::vector<Digit>> rows, Prime p) { return rref(std::move(rows), p.value()).size(); }

FunctionalSystem::FunctionalSystem(std::vector<Functional> functionals) : functionals_(std::move(functionals)) {
  if (functionals_.empty()) throw std::invalid_argument("a system needs at least one functional");
  std::vector<std::vector<Digit>> rows;
  for (const Functional& f : functionals_) {
    if (!(f.prime() == prime()) || f.scale() != scale()) {
      throw std::invalid_argument("functionals of a system must share p and scale");
    }
    rows.push_back(f.coefficients().digits());
  }
  if (rank_mod_p(std::move(rows), prime()) != functionals_.size()) {
    throw std::invalid_argument("functionals are linearly dependent");
  }
}

std::vector<std::uint64_t> FunctionalSystem::indices() const {
  std::vector<std::uint64_t> out;
  for (const Functional& f : functionals_) out.push_back(f.index());
  return out;
}

std::vector<Digit> FunctionalSystem::operator()(const GroupElement& g) const {
  std::vector<Digit> out;
  for (const Functional& f : functionals_) out.push_back(f(g));
  return out;
}

std::string FunctionalSystem::to_string() const {
  std::string out;
  for (const Functional& f : functionals_) out += (out.empty() ? "" : ";") + f.coefficients().to_string();
  return out;
}

void for_each_system(Prime p, unsigned scale, unsigned d, const std::function<bool(const FunctionalSystem&)>& visit,
                     bool dedup, Budget budget) {
  if (d == 0) throw std::invalid_argument("system rank must be positive");
  const std::uint64_t m = group_order_u64(p, scale);
  if (m == 0) throw BudgetExceeded("functionals on G_" + std::to_string(p.value()) + "^(" + std::to_string(scale) + ")");
  mpz_class tuples;
  mpz_bin_uiui(tuples.get_mpz_t(), m - 1, d);
  require_within(tuples, budget, "enumerating rank-" + std::to_string(d) + " systems");

  std::vector<std::uint64_t> chosen;
  std::vector<std::vector<Digit>> rows;
  bool stop = false;
  const auto recurse = [&](auto&& self, std::uint64_t start) -> void {
    if (chosen.size() == d) {
      if (dedup) {
        std::vector<std::uint64_t> canonical;
        for (const auto& row : rref(rows, p.value())) {
          canonical.push_back(GroupElement::from_digits(p, scale, row).index());
        }
        std::sort(canonical.begin(), canonical.end());
        if (canonical != chosen) return;
      }
      std::vector<Functional> fs;
      for (const std::uint64_t i : chosen) fs.push_back(Functional::from_index(p, scale, i));
      stop = !visit(FunctionalSystem(std::move(fs)));
      return;
    }
    for (std::uint64_t i = start; i < m && !stop; ++i) {
      rows.push_back(GroupElement::from_index(p, scale, i).digits());
      if (rank_mod_p(rows, p) == rows.size()) {
        chosen.push_back(i);
        self(self, i + 1);
        chosen.pop_back();
      }
      rows.pop_back();
    }
  };
  recurse(recurse, 1);
}

std::vector<FunctionalSystem> enumerate_systems(Prime p, unsigned scale, unsigned d, bool dedup, Budget budget) {
  std::vector<FunctionalSystem> out;
  for_each_system(
      p, scale, d,
      [&](const FunctionalSystem& s) {
        out.push_back(s);
        return true;
      },
      dedup, budget);
  return out;
}

std::set<std::vector<Digit>> image_of(std::span<const GroupElement> members, const FunctionalSystem& system) {
  std::set<std::vector<Digit>> out;
  for (const GroupElement& g : members) {
    if (g.scale() > system.scale() && !g.is_constant_on(system.scale())) {
      throw std::invalid_argument("member scale does not match the system");
    }
    out.insert(system(g));
  }
  return out;
}

// ---------------------------------------------------------------------------

GroupSubset::GroupSubset(Prime p, unsigned scale, Budget budget) : p_(p), scale_(scale) {
  require_within(group_order(p, scale), budget, "indicator over G_" + std::to_string(p.value()) + "^(" +
                                                    std::to_string(scale) + ")");
  bits_.assign(group_order_u64(p, scale), 0);
}

GroupSubset GroupSubset::from_members(Prime p, unsigned scale, std::span<const GroupElement> members, Budget budget) {
  GroupSubset out(p, scale, budget);
  for (const GroupElement& g : members) out.insert(g);
  return out;
}

GroupSubset GroupSubset::from_predicate(Prime p, unsigned scale, const std::function<bool(const GroupElement&)>& pred,
                                        Budget budget) {
  GroupSubset out(p, scale, budget);
  for (const GroupElement& g : enumerate_group(p, scale, budget)) {
    if (pred(g)) out.insert(g);
  }
  return out;
}

std::uint64_t GroupSubset::index_of(const GroupElement& g) const { return at_scale(g, p_, scale_).index(); }

void GroupSubset::insert(const GroupElement& g) {
  std::uint8_t& bit = bits_[index_of(g)];
  if (!bit) ++count_;
  bit = 1;
}

bool GroupSubset::contains(const GroupElement& g) const { return bits_[index_of(g)] != 0; }

GroupSubset GroupSubset::complement() const {
  GroupSubset out = *this;
  for (auto& bit : out.bits_) bit ^= 1;
  out.count_ = universe() - count_;
  return out;
}

std::vector<GroupElement> GroupSubset::members() const {
  std::vector<GroupElement> out;
  out.reserve(count_);
  for (std::uint64_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(GroupElement::from_index(p_, scale_, i));
  }
  return out;
}

// ---------------------------------------------------------------------------

DensityResult dense_upto(const GroupSubset& s, unsigned d_max, DensityOptions options) {
  Uncovered u = first_uncovered(s, d_max, options);
  DensityResult out;
  out.dense = !u.miss;
  out.d_max = d_max;
  out.kernels_checked = u.kernels;
  out.miss = std::move(u.miss);
  return out;
}

std::optional<CosetWitness> contains_coset(const GroupSubset& d, unsigned d_max, DensityOptions options) {
  Uncovered u = first_uncovered(d.complement(), d_max, options);
  if (!u.miss) return std::nullopt;
  for (std::uint64_t i = 0; i < d.universe(); ++i) {
    GroupElement g = GroupElement::from_index(d.prime(), d.scale(), i);
    if (u.miss->system(g) == u.miss->missing) {
      return CosetWitness{u.miss->system, u.miss->missing, std::move(g)};
    }
  }
  throw std::logic_error("independent functionals must be surjective");
}

// ---------------------------------------------------------------------------

std::vector<CheckRecord> verify_hamming_generation(Prime p, unsigned n, unsigned d, Budget budget) {
  const KeyValues params = {{"p", std::to_string(p.value())}, {"n", std::to_string(n)}, {"d", std::to_string(d)}};
  const std::vector<GroupElement> ball = enumerate_ball(p, BallSpec(n, 1), budget);
  std::vector<CheckRecord> records;
  const auto record = [&](std::string part) {
    CheckRecord r;
    r.check = "hamming-generation";
    r.lemma_tag = "ball-generation (" + part + ")";
    r.params = params;
    r.params.emplace_back("part", std::move(part));
    r.mode = "exhaustive";
    return r;
  };

  {
    CheckRecord r = record("iii");
    std::vector<std::vector<Digit>> rows;
    for (const GroupElement& u : ball) rows.push_back(u.digits());
    const std::size_t rank = rank_mod_p(std::move(rows), p);
    const std::size_t dimension = std::size_t{1} << n;
    Tally t;
    t.check(rank == dimension, [&] { return "U(n,1) spans only dimension " + std::to_string(rank); });
    t.fill(r);
    r.trials = ball.size();
    r.exact_values = {{"rank", std::to_string(rank)}, {"dimension", std::to_string(dimension)}};
    records.push_back(std::move(r));
  }
  {
    CheckRecord r = record("iv");
    Tally t;
    for (const unsigned k : {1U, d}) {
      for (const GroupElement& u : k == 1 ? ball : enumerate_ball(p, BallSpec(n, k), budget)) {
        for (Digit c = 0; c < p.value(); ++c) {
          const GroupElement v = scalar_mul(FieldValue(p, c), u);
          t.check(in_U(v, BallSpec(n, k)), [&] {
            return std::to_string(c) + "*" + u.to_string() + " leaves U(" + std::to_string(n) + "," + std::to_string(k) + ")";
          });
        }
      }
      if (d == 1) break;
    }
    t.fill(r);
    records.push_back(std::move(r));
  }
  {
    CheckRecord r = record("v");
    mpz_class tuples;
    mpz_ui_pow_ui(tuples.get_mpz_t(), ball.size(), d);
    require_within(tuples, budget, "sums of members of U(n,1)");
    Tally t;
    std::vector<std::size_t> pick(d, 0);
    while (true) {
      GroupElement sum(p, n);
      for (const std::size_t i : pick) sum = sum + ball[i];
      t.check(in_U(sum, BallSpec(n, d)), [&] { return "sum " + sum.to_string() + " leaves U(n,d)"; });
      std::size_t pos = 0;
      while (pos < d && ++pick[pos] == ball.size()) pick[pos++] = 0;
      if (pos == d) break;
    }
    t.fill(r);
    records.push_back(std::move(r));
  }
  {
    CheckRecord r = record("conclusion");
    const std::vector<GroupElement> big = enumerate_ball(p, BallSpec(n, d), budget);
    const DensityResult result = dense_upto(GroupSubset::from_members(p, n, big, budget), d, DensityOptions{true, budget});
    r.trials = result.kernels_checked;
    r.violations = result.dense ? 0 : 1;
    if (result.miss) {
      r.witnesses.push_back("system " + result.miss->system.to_string() + " misses " +
                            digits_to_string(result.miss->missing));
    }
    r.note = "every kernel of index at most p^d, d = " + std::to_string(d);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace bohrsets
