// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "bohrsets/bohr.hpp"
#include "bohrsets/construction.hpp"
#include "bohrsets/enumeration.hpp"
#include "bohrsets/partition.hpp"
#include "bohrsets/partition_count.hpp"
#include "bohrsets/shift_lemma.hpp"
#include "cli.hpp"
#include "oracle.hpp"

using namespace bohrsets;

namespace {

// Wall-clock limits per criterion, in seconds.
constexpr double kLimitPartition = 60;
constexpr double kLimitBaseShift = 60;
constexpr double kLimitIterated = 300;
constexpr double kLimitCounting = 60;
constexpr double kLimitTrend = 10;
constexpr double kLimitZBound = 60;
constexpr double kLimitBohr = 300;
constexpr double kLimitMechanism = 300;
constexpr double kLimitDifference = 60;
constexpr double kLimitDeterminism = 300;

// f(4) is compared exactly; this only bounds the quoted four-decimal value.
constexpr double kDecimalTolerance = 1e-4;

constexpr std::uint64_t kIteratedSamples = 10000;
constexpr std::uint64_t kMechanismSamples = 100000;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void add(const std::string& text) { detail += (detail.empty() ? "" : "; ") + text; }
};

int failures = 0;

void criterion(int id, const char* name, double limit, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds > limit) {
    out.pass = false;
    out.add("over the " + std::to_string(static_cast<int>(limit)) + " s limit");
  }
  if (!out.pass) ++failures;
  std::printf("%s %2d %s: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", id, name, out.detail.c_str(), seconds);
  std::fflush(stdout);
}

struct Case {
  unsigned p;
  unsigned n;
  unsigned m;
};

std::vector<Case> small_cases() {
  std::vector<Case> out;
  for (unsigned n = 2; n <= 4; ++n) {
    for (unsigned m = 1; m <= 3; ++m) out.push_back({2, n, m});
  }
  for (unsigned n = 1; n <= 2; ++n) {
    for (unsigned m = 1; m <= 2; ++m) out.push_back({3, n, m});
  }
  return out;
}

std::uint64_t total_violations(const std::vector<CheckRecord>& records) {
  std::uint64_t v = 0;
  for (const auto& r : records) v += r.violations;
  return v;
}

std::string run_cli(const cli::RunConfig& config, int& status) {
  std::ostringstream out, err;
  status = cli::run(config, out, err);
  return out.str();
}

// -------------------------------------------------------------------------

Outcome partition_exactness() {
  Outcome out;
  std::uint64_t elements = 0;
  for (const Case& c : small_cases()) {
    const PartitionSpec spec(Prime(c.p), {{c.n, c.m}});
    const Partition partition(spec);
    std::vector<std::uint64_t> sizes(c.p + 1, 0);
    for (const GroupElement& g : enumerate_group(spec.prime(), c.n)) {
      const auto matches = matching_patterns(g, spec);
      const CellLabel label = partition.classify(g);
      const bool unique = matches.size() <= 1 &&
                          (matches.empty() ? label.is_z() : label == CellLabel::cell(matches.front().first));
      out.require(unique, "element " + g.to_string() + " in " + spec.to_string());
      if (!unique) return out;
      ++sizes[label.is_z() ? c.p : label.value()];
      ++elements;
    }
    std::uint64_t sum = 0;
    for (const auto s : sizes) sum += s;
    for (Digit x = 1; x < c.p; ++x) out.require(sizes[x] == sizes[0], "unequal cells for " + spec.to_string());
    out.require(mpz_class(sum) == group_order(spec.prime(), c.n), "sizes do not add up for " + spec.to_string());
  }
  out.add(std::to_string(small_cases().size()) + " specs, " + std::to_string(elements) +
          " elements, one label each, equal cells, cells + Z = group");
  return out;
}

Outcome base_shift() {
  Outcome out;
  const std::vector<unsigned> one = {1};
  struct Run {
    unsigned p;
    const char* spec;
  };
  for (const Run run : {Run{2, "3:2"}, Run{3, "2:2"}, Run{3, "3:2"}}) {
    const PartitionSpec spec = PartitionSpec::parse(Prime(run.p), run.spec);
    const auto records = verify_shift_lemma(spec, one, VerifyOptions{});
    std::uint64_t trials = 0;
    std::string skipped;
    for (const auto& r : records) {
      trials += r.trials;
      out.require(r.violations == 0, r.lemma_tag + " for p=" + std::to_string(run.p) + " " + run.spec);
      if (r.skipped) skipped += " " + r.lemma_tag;
    }
    std::string text = "p=" + std::to_string(run.p) + " (" + run.spec + ") k=1: " + std::to_string(trials) +
                       " trials, 0 violations";
    if (!skipped.empty()) text += ", vacuous level so" + skipped + " is not applicable";
    out.add(text);
    if (run.p == 2) {
      out.require(records[0].trials == 512 && records[3].trials == 256, "p=2 coverage of all 256 elements");
      out.require(ball_size(Prime(2), BallSpec(3, 1)) == 9, "|U(3,1)| over F_2 is 9");
    }
  }
  return out;
}

Outcome iterated_shift() {
  Outcome out;
  VerifyOptions options;
  options.mode = Mode::sampled;
  options.samples = kIteratedSamples;
  options.seed = kSeed;
  const std::vector<unsigned> shifts = {1, 1};
  const auto records = verify_shift_lemma(PartitionSpec::parse(Prime(2), "3:2,6:2"), shifts, options);
  for (const std::size_t q : {0u, 2u, 6u}) {
    // Part (vii) adds the constant-membership trials to the samples.
    out.require(records[q].trials >= kIteratedSamples, records[q].lemma_tag + " sample count");
    out.require(records[q].violations == 0, records[q].lemma_tag);
  }
  out.require(total_violations(records) == 0, "some sampled part");
  out.add("(i), (iii), (vii) on 3:2,6:2 with 10^4 concatenation samples each: 0 violations");

  const auto base = verify_shift_lemma(PartitionSpec::parse(Prime(2), "3:2"), std::vector<unsigned>{1}, {});
  for (const std::size_t q : {3u, 4u, 5u}) {
    out.require(base[q].violations == 0 && base[q].mode == "exhaustive", base[q].lemma_tag);
  }
  out.add("(iv)-(vi) exhaustive at 3:2: 0 violations");
  return out;
}

Outcome exact_counting() {
  Outcome out;
  for (const Case& c : small_cases()) {
    const PartitionSpec spec(Prime(c.p), {{c.n, c.m}});
    const auto census = oracle::census(c.p, {{c.n, c.m}});
    for (Digit x = 0; x < c.p; ++x) {
      out.require(count_cell(spec, CellLabel::cell(x)) == census[x], "cell " + std::to_string(x) + " of " +
                                                                         spec.to_string());
    }
    out.require(count_cell(spec, CellLabel::z()) == census[c.p], "Z of " + spec.to_string());
  }
  const PartitionCounts c = count_partition(PartitionSpec(Prime(2), {{4, 1}}));
  out.require(c.cell == 14893 && c.group == 65536, "|P_0^(4,1)| = 14893 of 65536");
  out.add("count_cell equals the brute-force census on " + std::to_string(small_cases().size()) +
          " specs; |P_0^(4,1)| = " + c.cell.get_str() + " of " + c.group.get_str());
  return out;
}

Outcome density_trend() {
  Outcome out;
  std::vector<mpq_class> f;
  for (const unsigned n : {4u, 6u, 8u, 10u}) {
    const PartitionCounts c = count_partition(PartitionSpec(Prime(2), {{n, 1}}));
    out.require(c.exact, "exact count at n=" + std::to_string(n));
    f.push_back(c.cell_fraction());
  }
  out.require(f[0] == mpq_class(14893, 65536), "f(4) = 14893/65536");
  out.require(std::abs(f[0].get_d() - 0.2273) < kDecimalTolerance, "f(4) ~ 0.2273");
  out.require(f[3] > mpq_class(45, 100), "f(10) > 0.45");
  for (std::size_t i = 1; i < f.size(); ++i) out.require(f[i] > f[i - 1], "monotone at step " + std::to_string(i));
  char text[160];
  std::snprintf(text, sizeof text, "f(4)=%s=%.6f, f(6)=%.4f, f(8)=%.4f, f(10)=%.6f, increasing", f[0].get_str().c_str(),
                f[0].get_d(), f[1].get_d(), f[2].get_d(), f[3].get_d());
  out.add(text);
  return out;
}

Outcome z_bounds() {
  Outcome out;
  for (const Case& c : small_cases()) {
    const mpz_class z = count_cell(PartitionSpec(Prime(c.p), {{c.n, c.m}}), CellLabel::z());
    const mpz_class bound = z_bound(Prime(c.p), c.n, c.m);
    out.require(z <= bound, "|Z| " + z.get_str() + " > " + bound.get_str() + " at p=" + std::to_string(c.p) +
                                " n=" + std::to_string(c.n) + " m=" + std::to_string(c.m));
  }
  out.add("|Z| <= bound for all " + std::to_string(small_cases().size()) + " parameter sets (exact integers)");
  return out;
}

Outcome bohr_coverage() {
  Outcome out;
  const Prime p(2);
  GroupSubset s(p, 4);
  for (const BallSpec ball : {BallSpec(3, 1), BallSpec(4, 2)}) {
    const GroupElement one = GroupElement::constant(p, ball.n, FieldValue(p, 1));
    for (const GroupElement& u : enumerate_ball(p, ball)) s.insert(u + one);
  }
  const DensityResult r = dense_upto(s, 2);
  out.require(r.dense, "V(3,1) u V(4,2) misses a coset");
  out.add("V(3,1) u V(4,2) meets every coset of all " + std::to_string(r.kernels_checked) +
          " subgroups of index <= 4");
  std::uint64_t checks = 0;
  for (unsigned n = 2; n <= 4; ++n) {
    for (unsigned d = 1; d <= 2; ++d) {
      for (const auto& rec : verify_hamming_generation(p, n, d)) {
        if (rec.params.back().second == "conclusion") continue;
        ++checks;
        out.require(rec.violations == 0, rec.lemma_tag + " n=" + std::to_string(n) + " d=" + std::to_string(d));
      }
    }
  }
  out.add(std::to_string(checks) + " generation facts (iii)-(v) hold for n in {2,3,4}, d <= 2");
  return out;
}

Outcome mechanism() {
  Outcome out;
  const auto single = verify_disjointness(ConstructionParams::preset("p2-single"), VerifyOptions{});
  out.require(single[0].trials == 81 && single[1].trials == 81, "all 9 x 9 pairs visited");
  out.require(single[0].violations == 0, "a+s in P_0^(3,1)");
  out.require(single[1].violations == 0, "a+s outside A");
  out.require(single[2].violations == 0, "constant shift");
  out.add("(3,2,1) exhaustive: 81 pairs, 0 violations");

  VerifyOptions options;
  options.mode = Mode::sampled;
  options.samples = kMechanismSamples;
  options.seed = kSeed;
  const auto two = verify_disjointness(ConstructionParams::preset("p2-double"), options);
  for (std::size_t q = 0; q < 3; ++q) {
    out.require(two[q].trials == kMechanismSamples, two[q].lemma_tag + " sample count");
    out.require(two[q].violations == 0, two[q].lemma_tag);
  }
  out.add("(3,2,1),(6,2,1) sampled: 10^5 pairs, 0 violations");
  return out;
}

Outcome difference_sets() {
  Outcome out;
  struct Run {
    unsigned p, n;
    const char* subsets;
    const char* min_size;
  };
  for (const Run run : {Run{2, 2, "65536", "9"}, Run{3, 1, "512", "4"}}) {
    const auto records = theorem2_brute(Prime(run.p), run.n, VerifyOptions{});
    const auto& main = records[0];
    std::string subsets, min_size;
    for (const auto& [k, v] : main.exact_values) {
      if (k == "subsets") subsets = v;
      if (k == "min_size") min_size = v;
    }
    out.require(subsets == run.subsets && min_size == run.min_size, "subset range for p=" + std::to_string(run.p));
    out.require(main.violations == 0, "A-A = G for p=" + std::to_string(run.p));
    out.require(records[1].violations == 0, "index-p coset is below threshold with A-A != G");
    out.add("p=" + std::to_string(run.p) + ": " + std::to_string(main.trials) + " of " + subsets +
            " subsets have |A| >= " + min_size + ", all with A-A = G");
  }
  return out;
}

Outcome determinism() {
  Outcome out;
  cli::RunConfig construction;
  construction.command = "check-construction";
  construction.preset = "p2-double";
  construction.mode = "sampled";
  construction.samples = kMechanismSamples;
  construction.seed = kSeed;

  cli::RunConfig lemmas;
  lemmas.command = "verify-lemmas";
  lemmas.spec = "3:2,6:2";
  lemmas.shifts = "1,1";
  lemmas.mode = "sampled";
  lemmas.samples = kIteratedSamples;
  lemmas.seed = kSeed;

  for (const cli::RunConfig& config : {construction, lemmas}) {
    int first_status = 0, second_status = 0;
    const std::string first = run_cli(config, first_status);
    const std::string second = run_cli(config, second_status);
    out.require(first_status == cli::kOk && second_status == cli::kOk, config.command + " exit status");
    out.require(!first.empty() && first == second, config.command + " reports differ");
    out.add(config.command + ": " + std::to_string(first.size()) + " bytes identical");
  }
  return out;
}

}  // namespace

int main() {
  criterion(1, "partition exactness", kLimitPartition, partition_exactness);
  criterion(2, "base shift lemma", kLimitBaseShift, base_shift);
  criterion(3, "iterated shift lemma", kLimitIterated, iterated_shift);
  criterion(4, "exact counting oracle", kLimitCounting, exact_counting);
  criterion(5, "density trend", kLimitTrend, density_trend);
  criterion(6, "Z bound", kLimitZBound, z_bounds);
  criterion(7, "Bohr coverage", kLimitBohr, bohr_coverage);
  criterion(8, "construction mechanism", kLimitMechanism, mechanism);
  criterion(9, "difference-set threshold", kLimitDifference, difference_sets);
  criterion(10, "determinism", kLimitDeterminism, determinism);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
