#pragma once

// The dense set A = union over x in E of A_x, A_x = union over l <= L of
// P_x^{n_l}, and S = union over i <= L of V(n_i, k_i), truncated at level L.
// The checks confirm that A + S misses A: for a in P_x^{n_l} and s in
// V(n_j, k_j), a + s lands in P_{x+1} of the margin-reduced partition with
// r = max(j, l) levels, and x + 1 is never in E.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "bohrsets/hamming.hpp"
#include "bohrsets/partition.hpp"
#include "bohrsets/partition_count.hpp"
#include "bohrsets/report.hpp"
#include "bohrsets/verify.hpp"

namespace bohrsets {

struct ConstructionLevel {
  unsigned n;
  unsigned m;
  unsigned k;

  friend bool operator==(const ConstructionLevel&, const ConstructionLevel&) = default;
};

/// 1/2 for p = 2, 1/2 - 1/(2p) for odd p.
mpq_class delta(Prime p);

/// The odd residues below p; |E|/p = delta(p) and (E+1) misses E.
std::vector<Digit> default_E(Prime p);

class ConstructionParams {
 public:
  /// Validates: scales increase, k_i < m_i, E is a nonempty set of residues
  /// with (E+1) disjoint from E, 1 <= L <= number of levels, 0 <= epsilon < 1.
  ConstructionParams(Prime p, std::vector<ConstructionLevel> levels, std::vector<Digit> E, std::size_t L,
                     mpq_class epsilon = mpq_class(1, 10));

  /// "p2-single": p=2 (3,2,1), L=1. "p2-double": p=2 (3,2,1),(6,2,1), L=2.
  /// "p3-single": p=3 (3,2,1), L=1.
  static ConstructionParams preset(std::string_view name);
  static std::vector<std::string> preset_names();

  /// Comma-separated "n:m:k" triples; "n::k" takes the default m = 3k.
  static std::vector<ConstructionLevel> parse_levels(std::string_view text);
  std::string levels_string() const;

  Prime prime() const noexcept { return p_; }
  const std::vector<ConstructionLevel>& levels() const noexcept { return levels_; }
  const std::vector<Digit>& E() const noexcept { return E_; }
  bool in_E(Digit x) const;
  std::size_t L() const noexcept { return L_; }
  const mpq_class& epsilon() const noexcept { return epsilon_; }

  /// (n_1, m_1), ..., (n_l, m_l).
  PartitionSpec spec(std::size_t l) const;
  /// (n_1, m_1 - c k_1), ..., (n_l, m_l - c k_l).
  PartitionSpec reduced_spec(std::size_t l, unsigned c = 1) const;
  /// (n_1, k_1), ..., (n_l, k_l).
  std::vector<BallSpec> balls(std::size_t l) const;

 private:
  Prime p_;
  std::vector<ConstructionLevel> levels_;
  std::vector<Digit> E_;
  std::size_t L_;
  mpq_class epsilon_;
};

/// g in A (truncated at L). Requires g constant on scale-n_L cylinders.
bool in_A(const GroupElement& g, const ConstructionParams& params);
/// g in S (truncated at L).
bool in_S(const GroupElement& g, const ConstructionParams& params);

/// Records: containment of a + s in P_{x+1} of the reduced partition,
/// avoidance of A, exactness of the constant shift, and (when every
/// m_i > 2 k_i) the second shift behind A' = A + S.
std::vector<CheckRecord> verify_disjointness(const ConstructionParams& params, const VerifyOptions& options);

struct DensityRow {
  std::size_t level = 0;
  unsigned n = 0;
  PartitionCounts counts;
  /// |A_l| / |G_p^(n_l)| with A_l the union of P_x^{n_l}, x in E.
  mpq_class fraction;
  double fraction_approx = 0;
  /// |E| (1 - epsilon) / p.
  mpq_class target;
  bool exceeds_target = false;
  /// Exact concatenation lower bound for |P_x^{n_l}| (levels >= 2).
  std::optional<mpz_class> concatenation_bound;
};

std::vector<DensityRow> density_report(const ConstructionParams& params, CountOptions options = {});

// Finite analogues of the difference-set threshold.

/// Over all (exhaustive) or random (sampled) subsets A of G_p^(N) with
/// |A| > delta(p) |G|: A - A = G. A second record checks that a coset of an
/// index-p subgroup (|A| = |G|/p) has A - A != G.
std::vector<CheckRecord> theorem2_brute(Prime p, unsigned N, const VerifyOptions& options);

struct WindowResult {
  GroupElement g;
  std::uint64_t count = 0;
  /// ceil(|A| |F| / |G|).
  std::uint64_t bound = 0;
  bool meets_bound = false;
};

/// The g maximising |(A - g) intersect F| (the first in index order on ties).
WindowResult window_density(const std::vector<GroupElement>& A, const std::vector<GroupElement>& F, Prime p,
                            unsigned N);

}  // namespace bohrsets
