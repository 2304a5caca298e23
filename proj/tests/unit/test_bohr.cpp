#include <doctest.h>

#include <set>

#include "bohrsets/bohr.hpp"
#include "oracle.hpp"

using namespace bohrsets;

namespace {

GroupSubset random_subset(Prime p, unsigned scale, double density, SplitRng& rng) {
  return GroupSubset::from_predicate(p, scale, [&](const GroupElement&) {
    return static_cast<double>(rng.below(1000)) < density * 1000;
  });
}

bool miss_is_real(const GroupSubset& s, const CosetMiss& miss) {
  for (const GroupElement& g : s.members()) {
    if (miss.system(g) == miss.missing) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("functionals evaluate dot products") {
  const Prime p(3);
  const Functional f(GroupElement::parse("3,2:1202"));
  const GroupElement g = GroupElement::parse("3,2:2111");
  CHECK(f(g) == (1 * 2 + 2 * 1 + 0 * 1 + 2 * 1) % 3);
  CHECK(f(GroupElement::parse("3,1:12")) == (1 + 2 + 0 + 4) % 3);
  CHECK(Functional::from_index(p, 2, f.index()).coefficients() == f.coefficients());
}

TEST_CASE("rank and independence") {
  const Prime p(3);
  CHECK(rank_mod_p({{1, 2, 0}, {2, 1, 0}, {0, 0, 1}}, p) == 2);
  CHECK(rank_mod_p({{1, 0}, {0, 1}}, p) == 2);
  CHECK(rank_mod_p({{0, 0}}, p) == 0);
  CHECK_THROWS(FunctionalSystem({}));
  CHECK_THROWS(FunctionalSystem({Functional::from_index(p, 1, 1), Functional::from_index(p, 1, 2)}));
  CHECK_THROWS(FunctionalSystem({Functional::from_index(p, 1, 1), Functional::from_index(p, 2, 2)}));
  const FunctionalSystem system({Functional::from_index(Prime(2), 1, 1), Functional::from_index(Prime(2), 1, 2)});
  CHECK(system.to_string() == "2,1:01;2,1:10");
  CHECK(system.indices() == std::vector<std::uint64_t>{1, 2});
  CHECK(system(GroupElement::parse("2,1:11")) == std::vector<Digit>{1, 1});
}

TEST_CASE("system enumeration counts") {
  std::size_t count = 0;
  for_each_system(Prime(2), 2, 1, [&](const FunctionalSystem&) { return ++count, true; });
  CHECK(count == 15);
  CHECK(enumerate_systems(Prime(2), 2, 2).size() == 105);
  // Gaussian binomials: 2-dimensional subspaces of F_2^4, lines of F_3^2.
  CHECK(enumerate_systems(Prime(2), 2, 2, true).size() == 35);
  CHECK(enumerate_systems(Prime(2), 2, 3, true).size() == 15);
  CHECK(enumerate_systems(Prime(3), 1, 1).size() == 8);
  CHECK(enumerate_systems(Prime(3), 1, 1, true).size() == 4);
  CHECK(enumerate_systems(Prime(3), 1, 2, true).size() == 1);
  count = 0;
  for_each_system(Prime(2), 2, 1, [&](const FunctionalSystem&) { return ++count < 3; });
  CHECK(count == 3);
  CHECK_THROWS_AS(enumerate_systems(Prime(2), 4, 3, false, Budget{1000}), BudgetExceeded);
}

TEST_CASE("group subsets") {
  const Prime p(2);
  GroupSubset s(p, 2);
  s.insert(GroupElement::parse("2,2:0110"));
  s.insert(GroupElement::parse("2,1:01"));
  s.insert(GroupElement::parse("2,2:0110"));
  CHECK(s.size() == 2);
  CHECK(s.contains(GroupElement::parse("2,2:0011")));
  CHECK(s.contains(GroupElement::parse("2,3:00111100")));
  CHECK_FALSE(s.contains(GroupElement::parse("2,2:0000")));
  CHECK(s.complement().size() == 14);
  CHECK(s.members().size() == 2);
  CHECK_THROWS(s.insert(GroupElement::parse("2,3:00111101")));
  const auto image = image_of(s.members(), FunctionalSystem({Functional::from_index(p, 2, 1)}));
  CHECK(image == std::set<std::vector<Digit>>{{0}, {1}});
}

TEST_CASE("coverage agrees with the coset oracle") {
  SplitRng rng(17);
  for (const auto& [p, scale] : {std::pair{2u, 2u}, std::pair{3u, 1u}}) {
    const std::size_t length = std::size_t{1} << scale;
    for (int trial = 0; trial < 40; ++trial) {
      const GroupSubset s = random_subset(Prime(p), scale, 0.15 + 0.02 * trial, rng);
      std::vector<std::uint64_t> members;
      for (const auto& g : s.members()) members.push_back(g.index());
      for (unsigned d = 1; d <= 2; ++d) {
        for (const bool fast : {true, false}) {
          const DensityResult r = dense_upto(s, d, DensityOptions{fast, {}});
          REQUIRE(r.dense == oracle::meets_all_cosets(members, p, length, d));
          if (r.miss) CHECK(miss_is_real(s, *r.miss));
        }
      }
    }
  }
}

TEST_CASE("transform path matches the generic path at scale 3") {
  SplitRng rng(23);
  for (int trial = 0; trial < 12; ++trial) {
    const GroupSubset s = random_subset(Prime(2), 3, 0.55 + 0.035 * trial, rng);
    for (unsigned d = 1; d <= 2; ++d) {
      const DensityResult fast = dense_upto(s, d, DensityOptions{true, {}});
      const DensityResult slow = dense_upto(s, d, DensityOptions{false, {}});
      REQUIRE(fast.dense == slow.dense);
      if (fast.dense) CHECK(fast.kernels_checked == slow.kernels_checked);
      if (fast.miss) CHECK(miss_is_real(s, *fast.miss));
      if (slow.miss) CHECK(miss_is_real(s, *slow.miss));
    }
  }
  // Every span of rank <= 2 in F_2^8: 255 lines plus 10795 planes.
  const GroupSubset everything = GroupSubset::from_predicate(Prime(2), 3, [](const GroupElement&) { return true; });
  CHECK(dense_upto(everything, 2).kernels_checked == 255 + 10795);
  CHECK(dense_upto(everything, 2, DensityOptions{false, {}}).kernels_checked == 255 + 10795);
}

TEST_CASE("small Hamming balls miss cosets") {
  const Prime p(2);
  const GroupElement one = GroupElement::constant(p, 3, FieldValue(p, 1));
  GroupSubset v(p, 3);
  for (const auto& u : enumerate_ball(p, BallSpec(3, 1))) v.insert(u + one);
  CHECK(dense_upto(v, 1).dense);
  const DensityResult r = dense_upto(v, 2);
  CHECK_FALSE(r.dense);
  REQUIRE(r.miss);
  CHECK(miss_is_real(v, *r.miss));
}

TEST_CASE("contains_coset finds a coset inside a set") {
  const Prime p(3);
  const FunctionalSystem system({Functional::from_index(p, 1, 1)});
  const GroupSubset coset =
      GroupSubset::from_predicate(p, 1, [&](const GroupElement& g) { return system(g) == std::vector<Digit>{2}; });
  const auto w = contains_coset(coset, 1);
  REQUIRE(w);
  CHECK(coset.contains(w->representative));
  for (const GroupElement& g : all_elements(p, 1)) {
    if (w->system(g) == w->value) CHECK(coset.contains(g));
  }
  GroupSubset sparse(p, 1);
  sparse.insert(GroupElement::parse("3,1:00"));
  CHECK_FALSE(contains_coset(sparse, 1));
  // At index 9 the kernel is trivial and {0} is itself a coset.
  const auto point = contains_coset(sparse, 2);
  REQUIRE(point);
  CHECK(point->representative.is_zero());
}

TEST_CASE("Hamming balls generate and cover") {
  for (const auto& [p, n, d] : {std::tuple{2u, 2u, 1u}, std::tuple{2u, 2u, 2u}, std::tuple{2u, 3u, 2u},
                                std::tuple{3u, 1u, 2u}, std::tuple{3u, 2u, 1u}}) {
    const auto records = verify_hamming_generation(Prime(p), n, d);
    REQUIRE(records.size() == 4);
    for (const auto& r : records) {
      CAPTURE(r.lemma_tag);
      CHECK(r.violations == 0);
      CHECK(r.trials > 0);
    }
  }
}
