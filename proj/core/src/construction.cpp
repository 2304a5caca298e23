#include "bohrsets/construction.hpp"

#include <algorithm>
#include <charconv>
#include <memory>
#include <stdexcept>

#include "bohrsets/parallel.hpp"
#include "bohrsets/partition_sample.hpp"

namespace bohrsets {

namespace {

std::string join_digits(const std::vector<Digit>& values) {
  std::string out;
  for (const Digit v : values) out += (out.empty() ? "" : ",") + std::to_string(v);
  return out;
}

unsigned parse_field(std::string_view text, const char* what) {
  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument(std::string("bad ") + what + " '" + std::string(text) + "'");
  }
  return value;
}

// Classifiers shared by membership tests and verification loops.
struct Machinery {
  explicit Machinery(const ConstructionParams& params) : params(params) {
    for (std::size_t l = 1; l <= params.L(); ++l) {
      cells.emplace_back(params.spec(l));
      reduced.emplace_back(params.reduced_spec(l, 1));
    }
    second_shift = true;
    for (std::size_t i = 0; i < params.L(); ++i) {
      const auto& level = params.levels()[i];
      second_shift = second_shift && level.m > 2 * level.k;
    }
    if (second_shift) {
      for (std::size_t l = 1; l <= params.L(); ++l) reduced_twice.emplace_back(params.reduced_spec(l, 2));
    }
  }

  bool in_A(const GroupElement& g) const {
    const unsigned top = params.levels()[params.L() - 1].n;
    if (g.scale() > top && !g.is_constant_on(top)) {
      throw std::invalid_argument("element is not constant on scale-" + std::to_string(top) + " cylinders");
    }
    for (std::size_t l = 1; l <= params.L(); ++l) {
      const unsigned n = params.levels()[l - 1].n;
      if (g.scale() > n && !g.is_constant_on(n)) continue;
      const CellLabel label = cells[l - 1].classify(g);
      if (label.is_cell() && params.in_E(label.value())) return true;
    }
    return false;
  }

  const ConstructionParams& params;
  std::vector<Partition> cells;
  std::vector<Partition> reduced;
  std::vector<Partition> reduced_twice;
  bool second_shift = false;
};

struct Member {
  GroupElement element;
  Digit x;        // cell label (for A) or unused (for S)
  std::size_t l;  // 1-based level
};

enum Part { kContainment, kAvoidance, kConstant, kSecond, kPartCount };

struct PairTallies {
  std::array<Tally, kPartCount> t;
  void merge(const PairTallies& o) {
    for (std::size_t q = 0; q < kPartCount; ++q) t[q].merge(o.t[q]);
  }
};

void check_pair(const Machinery& mc, const Member& a, const Member& s, PairTallies& out) {
  const std::uint32_t p = mc.params.prime().value();
  const std::size_t r = std::max(a.l, s.l);
  const GroupElement h = a.element + s.element;
  const CellLabel want = CellLabel::cell(a.x).shifted(1, p);
  const CellLabel got = mc.reduced[r - 1].classify(h);
  const auto pair_text = [&] { return "a=" + a.element.to_string() + " s=" + s.element.to_string(); };
  out.t[kContainment].check(got == want, [&] {
    return pair_text() + ": label " + got.to_string() + " under " + mc.params.reduced_spec(r).to_string() +
           ", expected " + want.to_string();
  });
  out.t[kAvoidance].check(!mc.in_A(h), [&] { return pair_text() + ": a+s lies in A"; });
}

void check_constant(const Machinery& mc, const Member& a, PairTallies& out) {
  const Prime p = mc.params.prime();
  const GroupElement one = GroupElement::constant(p, a.element.scale(), FieldValue(p, 1));
  const CellLabel got = mc.cells[a.l - 1].classify(a.element + one);
  const CellLabel want = CellLabel::cell(a.x).shifted(1, p.value());
  out.t[kConstant].check(got == want, [&] {
    return "a=" + a.element.to_string() + ": a+1 has label " + got.to_string() + ", expected " + want.to_string();
  });
}

void check_second(const Machinery& mc, const Member& a, const Member& s, const Member& s2, PairTallies& out) {
  const std::size_t r = std::max({a.l, s.l, s2.l});
  const CellLabel got = mc.reduced_twice[r - 1].classify(a.element + s.element + s2.element);
  const CellLabel want = CellLabel::cell(a.x).shifted(2, mc.params.prime().value());
  out.t[kSecond].check(got == want, [&] {
    return "a=" + a.element.to_string() + " s=" + s.element.to_string() + " s'=" + s2.element.to_string() +
           ": label " + got.to_string() + ", expected " + want.to_string();
  });
}

PairTallies exhaustive_pairs(const Machinery& mc, Budget budget) {
  const ConstructionParams& params = mc.params;
  const Prime p = params.prime();
  std::vector<Member> as;
  for (std::size_t l = 1; l <= params.L(); ++l) {
    for (const GroupElement& g : enumerate_group(p, params.levels()[l - 1].n, budget)) {
      const CellLabel label = mc.cells[l - 1].classify(g);
      if (label.is_cell() && params.in_E(label.value())) as.push_back({g, label.value(), l});
    }
  }
  std::vector<Member> ss;
  for (std::size_t j = 1; j <= params.L(); ++j) {
    const BallSpec ball = params.balls(j)[j - 1];
    const GroupElement one = GroupElement::constant(p, ball.n, FieldValue(p, 1));
    for (const GroupElement& u : enumerate_ball(p, ball, budget)) ss.push_back({u + one, 0, j});
  }
  const mpz_class work = mpz_class(static_cast<unsigned long>(as.size())) * ss.size() *
                         (mc.second_shift ? ss.size() : 1);
  require_within(work, budget, "pairs of A and S members");

  std::vector<PairTallies> partial(as.size());
  parallel_for(as.size(), [&](std::size_t i) {
    check_constant(mc, as[i], partial[i]);
    for (const Member& s : ss) {
      check_pair(mc, as[i], s, partial[i]);
      if (!mc.second_shift) continue;
      for (const Member& s2 : ss) check_second(mc, as[i], s, s2, partial[i]);
    }
  });
  PairTallies out;
  for (const auto& t : partial) out.merge(t);
  return out;
}

PairTallies sampled_pairs(const Machinery& mc, const VerifyOptions& options) {
  const ConstructionParams& params = mc.params;
  const Prime p = params.prime();
  const CellSampler sampler(params.spec(params.L()));
  const auto draw_a = [&](SplitRng& rng) {
    const Digit x = params.E()[rng.below(params.E().size())];
    const std::size_t l = 1 + rng.below(params.L());
    return Member{sampler.sample_prefix(l, x, rng), x, l};
  };
  const auto draw_s = [&](SplitRng& rng) {
    const std::size_t j = 1 + rng.below(params.L());
    const BallSpec ball = params.balls(j)[j - 1];
    const GroupElement one = GroupElement::constant(p, ball.n, FieldValue(p, 1));
    return Member{sample_ball(p, ball, rng) + one, 0, j};
  };

  const std::uint64_t batches = (options.samples + kSampleBatch - 1) / kSampleBatch;
  std::vector<PairTallies> partial(batches);
  parallel_for(batches, [&](std::size_t b) {
    const std::uint64_t count = std::min<std::uint64_t>(kSampleBatch, options.samples - b * kSampleBatch);
    SplitRng pairs = SplitRng(options.seed).split(0).split(b);
    SplitRng constants = SplitRng(options.seed).split(1).split(b);
    SplitRng triples = SplitRng(options.seed).split(2).split(b);
    for (std::uint64_t t = 0; t < count; ++t) {
      const Member a = draw_a(pairs);
      check_pair(mc, a, draw_s(pairs), partial[b]);
      check_constant(mc, draw_a(constants), partial[b]);
      if (mc.second_shift) {
        const Member a2 = draw_a(triples);
        const Member s = draw_s(triples);
        check_second(mc, a2, s, draw_s(triples), partial[b]);
      }
    }
  });
  PairTallies out;
  for (const auto& t : partial) out.merge(t);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

mpq_class delta(Prime p) {
  if (p.value() == 2) return mpq_class(1, 2);
  mpq_class out(p.value() - 1, 2 * static_cast<unsigned long>(p.value()));
  out.canonicalize();
  return out;
}

std::vector<Digit> default_E(Prime p) {
  std::vector<Digit> out;
  for (Digit x = 1; x < p.value(); x += 2) out.push_back(x);
  return out;
}

ConstructionParams::ConstructionParams(Prime p, std::vector<ConstructionLevel> levels, std::vector<Digit> E,
                                       std::size_t L, mpq_class epsilon)
    : p_(p), levels_(std::move(levels)), E_(std::move(E)), L_(L), epsilon_(std::move(epsilon)) {
  if (levels_.empty()) throw std::invalid_argument("construction needs at least one level");
  std::vector<Level> spec_levels;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const auto& level = levels_[i];
    if (level.k >= level.m) {
      throw std::invalid_argument("level " + std::to_string(i + 1) + " needs k < m");
    }
    spec_levels.push_back({level.n, level.m});
  }
  PartitionSpec(p, spec_levels);  // validates scales
  std::sort(E_.begin(), E_.end());
  E_.erase(std::unique(E_.begin(), E_.end()), E_.end());
  if (E_.empty()) throw std::invalid_argument("E must be nonempty");
  for (const Digit x : E_) {
    if (x >= p.value()) throw std::invalid_argument("E contains a value outside F_p");
    if (in_E(static_cast<Digit>((x + 1) % p.value()))) {
      throw std::invalid_argument("E+1 meets E at " + std::to_string((x + 1) % p.value()));
    }
  }
  if (L_ == 0 || L_ > levels_.size()) throw std::invalid_argument("truncation level out of range");
  if (epsilon_ < 0 || epsilon_ >= 1) throw std::invalid_argument("epsilon must lie in [0, 1)");
}

ConstructionParams ConstructionParams::preset(std::string_view name) {
  if (name == "p2-single") return ConstructionParams(Prime(2), {{3, 2, 1}}, default_E(Prime(2)), 1);
  if (name == "p2-double") return ConstructionParams(Prime(2), {{3, 2, 1}, {6, 2, 1}}, default_E(Prime(2)), 2);
  if (name == "p3-single") return ConstructionParams(Prime(3), {{3, 2, 1}}, default_E(Prime(3)), 1);
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> ConstructionParams::preset_names() { return {"p2-single", "p2-double", "p3-single"}; }

std::vector<ConstructionLevel> ConstructionParams::parse_levels(std::string_view text) {
  std::vector<ConstructionLevel> out;
  while (true) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    const auto first = item.find(':');
    const auto second = first == std::string_view::npos ? first : item.find(':', first + 1);
    if (second == std::string_view::npos) {
      throw std::invalid_argument("level '" + std::string(item) + "' is not of the form n:m:k");
    }
    ConstructionLevel level{};
    level.n = parse_field(item.substr(0, first), "level scale");
    level.k = parse_field(item.substr(second + 1), "shift radius");
    const std::string_view m = item.substr(first + 1, second - first - 1);
    level.m = m.empty() ? 3 * level.k : parse_field(m, "level margin");
    out.push_back(level);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string ConstructionParams::levels_string() const {
  std::string out;
  for (const auto& level : levels_) {
    out += (out.empty() ? "" : ",") + std::to_string(level.n) + ":" + std::to_string(level.m) + ":" +
           std::to_string(level.k);
  }
  return out;
}

bool ConstructionParams::in_E(Digit x) const { return std::binary_search(E_.begin(), E_.end(), x); }

PartitionSpec ConstructionParams::spec(std::size_t l) const {
  std::vector<Level> levels;
  for (std::size_t i = 0; i < l; ++i) levels.push_back({levels_.at(i).n, levels_[i].m});
  return PartitionSpec(p_, std::move(levels));
}

PartitionSpec ConstructionParams::reduced_spec(std::size_t l, unsigned c) const {
  std::vector<Level> levels;
  for (std::size_t i = 0; i < l; ++i) {
    const auto& level = levels_.at(i);
    if (c * level.k > level.m) throw std::invalid_argument("margin reduction below zero");
    levels.push_back({level.n, level.m - c * level.k});
  }
  return PartitionSpec(p_, std::move(levels));
}

std::vector<BallSpec> ConstructionParams::balls(std::size_t l) const {
  std::vector<BallSpec> out;
  for (std::size_t i = 0; i < l; ++i) out.emplace_back(levels_.at(i).n, levels_[i].k);
  return out;
}

bool in_A(const GroupElement& g, const ConstructionParams& params) { return Machinery(params).in_A(g); }

bool in_S(const GroupElement& g, const ConstructionParams& params) {
  const auto balls = params.balls(params.L());
  return in_S_union(g, balls, FieldValue(params.prime(), 1));
}

std::vector<CheckRecord> verify_disjointness(const ConstructionParams& params, const VerifyOptions& options) {
  const PartitionSpec full = params.spec(params.L());
  if (full.any_vacuous()) {
    throw std::invalid_argument("construction " + params.levels_string() + " has a vacuous level");
  }
  const Machinery mc(params);
  const PairTallies tallies =
      options.mode == Mode::exhaustive ? exhaustive_pairs(mc, options.budget) : sampled_pairs(mc, options);

  const KeyValues params_kv = {{"p", std::to_string(params.prime().value())},
                               {"levels", params.levels_string()},
                               {"E", join_digits(params.E())},
                               {"L", std::to_string(params.L())}};
  const std::array<std::pair<const char*, const char*>, kPartCount> names = {{
      {"containment", "union-shift"},
      {"avoidance", "difference-avoidance"},
      {"constant-shift", "constant-shift"},
      {"second-shift", "second-shift"},
  }};
  std::vector<CheckRecord> records;
  for (std::size_t q = 0; q < kPartCount; ++q) {
    CheckRecord r;
    r.check = "construction-disjointness";
    r.lemma_tag = names[q].second;
    r.params = params_kv;
    r.params.emplace_back("part", names[q].first);
    r.mode = to_string(options.mode);
    tallies.t[q].fill(r);
    if (options.mode == Mode::sampled) r.note = "members of A from the concatenation subset";
    if (q == kSecond && !mc.second_shift) {
      r.skipped = true;
      r.note = "needs m_i > 2 k_i on every level";
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<DensityRow> density_report(const ConstructionParams& params, CountOptions options) {
  const std::uint32_t p = params.prime().value();
  const auto e = static_cast<unsigned long>(params.E().size());
  const mpq_class target = mpq_class(e) * (1 - params.epsilon()) / p;
  std::vector<DensityRow> rows;
  for (std::size_t l = 1; l <= params.L(); ++l) {
    DensityRow row;
    row.level = l;
    row.n = params.levels()[l - 1].n;
    row.counts = count_partition(params.spec(l), options);
    row.target = target;
    if (row.counts.exact) {
      row.fraction = mpq_class(row.counts.cell * e, row.counts.group);
      row.fraction.canonicalize();
      row.fraction_approx = row.fraction.get_d();
      row.exceeds_target = row.fraction > target;
      if (l >= 2) row.concatenation_bound = concatenation_bound(params.spec(l), options);
    } else {
      row.fraction_approx = static_cast<double>(e) * row.counts.cell_fraction_approx();
      row.exceeds_target = row.fraction_approx > target.get_d();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace bohrsets
