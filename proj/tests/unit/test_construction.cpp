#include <doctest.h>

#include "bohrsets/construction.hpp"
#include "bohrsets/enumeration.hpp"
#include "oracle.hpp"

using namespace bohrsets;

TEST_CASE("delta and the default E") {
  CHECK(delta(Prime(2)) == mpq_class(1, 2));
  CHECK(delta(Prime(3)) == mpq_class(1, 3));
  CHECK(delta(Prime(5)) == mpq_class(2, 5));
  CHECK(delta(Prime(7)) == mpq_class(3, 7));
  for (const unsigned p : {2u, 3u, 5u, 7u, 11u}) {
    const auto E = default_E(Prime(p));
    CHECK(mpq_class(static_cast<unsigned long>(E.size()), p) == delta(Prime(p)));
    for (const Digit x : E) {
      for (const Digit y : E) CHECK((x + 1) % p != y);
    }
  }
}

TEST_CASE("parameter validation") {
  const Prime p(2);
  CHECK_THROWS(ConstructionParams(p, {{3, 1, 1}}, {1}, 1));        // k = m
  CHECK_THROWS(ConstructionParams(p, {{3, 2, 1}}, {0, 1}, 1));     // E + 1 meets E
  CHECK_THROWS(ConstructionParams(p, {{3, 2, 1}}, {}, 1));
  CHECK_THROWS(ConstructionParams(p, {{3, 2, 1}}, {2}, 1));
  CHECK_THROWS(ConstructionParams(p, {{3, 2, 1}}, {1}, 2));
  CHECK_THROWS(ConstructionParams(p, {{3, 2, 1}, {3, 2, 1}}, {1}, 1));
  CHECK_THROWS(ConstructionParams(p, {{3, 2, 1}}, {1}, 1, mpq_class(1)));
  CHECK_NOTHROW(ConstructionParams(Prime(5), {{3, 1, 0}}, {1, 3}, 1));
}

TEST_CASE("presets and level syntax") {
  const auto names = ConstructionParams::preset_names();
  CHECK(names.size() == 3);
  for (const auto& name : names) CHECK_NOTHROW(ConstructionParams::preset(name));
  CHECK_THROWS(ConstructionParams::preset("p7"));
  const auto two = ConstructionParams::preset("p2-double");
  CHECK(two.levels_string() == "3:2:1,6:2:1");
  CHECK(two.L() == 2);
  CHECK(two.spec(2).to_string() == "3:2,6:2");
  CHECK(two.reduced_spec(2).to_string() == "3:1,6:1");
  CHECK(two.reduced_spec(1, 2).to_string() == "3:0");
  CHECK(two.balls(2).size() == 2);

  const auto parsed = ConstructionParams::parse_levels("4::1,9:5:2");
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0] == ConstructionLevel{4, 3, 1});
  CHECK(parsed[1] == ConstructionLevel{9, 5, 2});
  CHECK_THROWS(ConstructionParams::parse_levels("4:1"));
  CHECK_THROWS(ConstructionParams::parse_levels("4:a:1"));
}

TEST_CASE("membership in A and S") {
  const auto params = ConstructionParams::preset("p2-single");
  const Prime p(2);
  CHECK(in_A(GroupElement::constant(p, 3, FieldValue(p, 1)), params));
  CHECK(in_A(GroupElement::constant(p, 1, FieldValue(p, 1)), params));
  CHECK_FALSE(in_A(GroupElement(p, 3), params));
  CHECK(in_A(GroupElement::parse("2,3:11011111"), params));
  CHECK_FALSE(in_A(GroupElement::parse("2,3:11001111"), params));
  CHECK_THROWS(in_A(GroupElement::parse("2,4:1111111111111110"), params));
  CHECK(in_S(GroupElement::constant(p, 3, FieldValue(p, 1)), params));
  CHECK(in_S(GroupElement::parse("2,3:11101111"), params));
  CHECK_FALSE(in_S(GroupElement::parse("2,3:11001111"), params));

  // Exhaustive: A and A + S are disjoint at scale 3, by filtering.
  std::vector<GroupElement> A, S;
  for (const GroupElement& g : enumerate_group(p, 3)) {
    if (in_A(g, params)) A.push_back(g);
    if (in_S(g, params)) S.push_back(g);
  }
  CHECK(A.size() == 9);
  CHECK(S.size() == 9);
  for (const auto& a : A) {
    for (const auto& s : S) CHECK_FALSE(in_A(a + s, params));
  }
}

TEST_CASE("disjointness checks") {
  const auto records = verify_disjointness(ConstructionParams::preset("p2-single"), {});
  REQUIRE(records.size() == 4);
  CHECK(records[0].trials == 81);
  CHECK(records[1].trials == 81);
  CHECK(records[2].trials == 9);
  CHECK(records[3].skipped);
  for (const auto& r : records) CHECK(r.violations == 0);

  // m > 2k exercises the second shift.
  const ConstructionParams wide(Prime(2), {{4, 3, 1}}, {1}, 1);
  const auto second = verify_disjointness(wide, {});
  CHECK_FALSE(second[3].skipped);
  CHECK(second[3].trials > 0);
  for (const auto& r : second) CHECK(r.violations == 0);

  const ConstructionParams odd(Prime(5), {{3, 1, 0}}, {1, 3}, 1);
  for (const auto& r : verify_disjointness(odd, {})) CHECK(r.violations == 0);

  VerifyOptions sampled;
  sampled.mode = Mode::sampled;
  sampled.samples = 1000;
  const auto two = verify_disjointness(ConstructionParams::preset("p2-double"), sampled);
  for (std::size_t q = 0; q < 3; ++q) {
    CHECK(two[q].trials == 1000);
    CHECK(two[q].violations == 0);
  }

  CHECK_THROWS(verify_disjointness(ConstructionParams(Prime(3), {{2, 2, 1}}, {1}, 1), {}));
  VerifyOptions tight;
  tight.budget = Budget{100};
  CHECK_THROWS_AS(verify_disjointness(ConstructionParams::preset("p2-double"), tight), BudgetExceeded);
}

TEST_CASE("density report") {
  const ConstructionParams params(Prime(2), {{4, 1, 0}}, {1}, 1);
  const auto rows = density_report(params);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].fraction == mpq_class(14893, 65536));
  CHECK(rows[0].target == mpq_class(9, 20));
  CHECK_FALSE(rows[0].exceeds_target);
  CHECK_FALSE(rows[0].concatenation_bound);

  const auto two = density_report(ConstructionParams::preset("p2-double"));
  REQUIRE(two.size() == 2);
  REQUIRE(two[1].concatenation_bound);
  CHECK(*two[1].concatenation_bound <= two[1].counts.cell);

  const ConstructionParams big(Prime(2), {{10, 1, 0}}, {1}, 1, mpq_class(0));
  const auto row = density_report(big)[0];
  CHECK(row.fraction > mpq_class(9, 20));
  CHECK(row.fraction < mpq_class(1, 2));
}

TEST_CASE("difference sets above the threshold") {
  for (const auto& [p, n] : {std::pair{2u, 1u}, std::pair{2u, 2u}, std::pair{3u, 1u}}) {
    const auto records = theorem2_brute(Prime(p), n, {});
    REQUIRE(records.size() == 2);
    CHECK(records[0].violations == 0);
    CHECK(records[1].violations == 0);
  }
  VerifyOptions sampled;
  sampled.mode = Mode::sampled;
  sampled.samples = 300;
  for (const auto& [p, n] : {std::pair{2u, 3u}, std::pair{5u, 1u}, std::pair{3u, 2u}}) {
    const auto records = theorem2_brute(Prime(p), n, sampled);
    CHECK(records[0].trials == 300);
    CHECK(records[0].violations == 0);
    CHECK(records[1].violations == 0);
  }
  CHECK_THROWS_AS(theorem2_brute(Prime(2), 3, {}), BudgetExceeded);
  CHECK_THROWS_AS(theorem2_brute(Prime(2), 4, sampled), BudgetExceeded);
}

TEST_CASE("difference threshold against a direct count") {
  // Over G_3^(1): count subsets of each size whose difference set is everything.
  const unsigned p = 3;
  std::vector<int> full_by_size(10, 0), all_by_size(10, 0);
  for (std::uint64_t mask = 0; mask < 512; ++mask) {
    std::vector<std::uint64_t> set;
    for (std::uint64_t i = 0; i < 9; ++i) {
      if ((mask >> i) & 1) set.push_back(i);
    }
    ++all_by_size[set.size()];
    if (oracle::differences(set, p, 2).size() == 9) ++full_by_size[set.size()];
  }
  for (std::size_t k = 4; k <= 9; ++k) CHECK(full_by_size[k] == all_by_size[k]);
  CHECK(full_by_size[3] < all_by_size[3]);
}

TEST_CASE("window density") {
  const Prime p(3);
  const auto all = all_elements(p, 1);
  std::vector<GroupElement> A = {all[1], all[5], all[7]};
  const auto whole = window_density(A, all, p, 1);
  CHECK(whole.count == 3);
  CHECK(whole.g.is_zero());
  CHECK(whole.meets_bound);

  // A = H + c, F = H: the maximum |H| is reached at g = c.
  std::vector<GroupElement> H, coset;
  const GroupElement c = GroupElement::parse("3,1:01");
  for (const auto& g : all) {
    if (g[1] == 0) {
      H.push_back(g);
      coset.push_back(g + c);
    }
  }
  const auto w = window_density(coset, H, p, 1);
  CHECK(w.count == 3);
  CHECK(w.g[1] == 1);

  SplitRng rng(4);
  for (int t = 0; t < 20; ++t) {
    std::vector<GroupElement> half;
    for (const auto& g : all) {
      if (rng.below(2)) half.push_back(g);
    }
    const auto r = window_density(half, H, p, 1);
    CHECK(r.meets_bound);
    if (2 * half.size() >= 9) CHECK(r.count >= 2);
  }
}
