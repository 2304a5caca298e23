#include <doctest.h>

#include <set>

#include "bohrsets/enumeration.hpp"
#include "bohrsets/partition.hpp"
#include "oracle.hpp"

using namespace bohrsets;

namespace {

oracle::Levels levels_of(const PartitionSpec& spec) {
  oracle::Levels out;
  for (const auto& l : spec.levels()) out.emplace_back(l.n, l.m);
  return out;
}

int as_int(CellLabel label) { return label.is_z() ? -1 : static_cast<int>(label.value()); }

}  // namespace

TEST_CASE("subset classes are translation equivariant") {
  for (const unsigned p : {2u, 3u, 5u, 7u}) {
    const SubsetClassFamily family{Prime(p)};
    const SubsetMask full = (SubsetMask{1} << p) - 1;
    std::size_t total = 0;
    for (Digit x = 0; x < p; ++x) {
      CHECK(family.class_of(SubsetMask{1} << x) == x);
      total += family.members(x).size();
      for (const SubsetMask s : family.members(x)) {
        CHECK(family.class_of(s) == x);
        CHECK(family.class_of(s) == oracle::subset_class(s, p));
        for (Digit y = 0; y < p; ++y) {
          CHECK(family.class_of(SubsetClassFamily::translate(s, y, p)) == (x + y) % p);
        }
      }
    }
    CHECK(total == full - 1);
    CHECK_THROWS(family.class_of(0));
    CHECK_THROWS(family.class_of(full));
  }
  CHECK_THROWS(SubsetClassFamily(Prime(23)));
}

TEST_CASE("spec parsing, vacuity and derived specs") {
  const PartitionSpec spec = PartitionSpec::parse(Prime(2), " 3:2 , 6:2");
  CHECK(spec.to_string() == "3:2,6:2");
  CHECK(spec.depth() == 2);
  CHECK(spec.scale() == 6);
  CHECK(spec.block_scale(1) == 3);
  CHECK_FALSE(spec.any_vacuous());
  CHECK(spec.tail().to_string() == "3:2");
  CHECK(spec.prefix(1).to_string() == "3:2");
  CHECK(spec.extended({8, 1}).to_string() == "3:2,6:2,8:1");
  CHECK(spec.with_margin_reduced(1, 1).to_string() == "3:2,6:1");
  const std::vector<unsigned> k = {2, 1};
  CHECK(spec.with_margins_reduced(k).to_string() == "3:0,6:1");
  CHECK_THROWS(spec.with_margin_reduced(0, 3));

  CHECK(PartitionSpec::parse(Prime(3), "2:2").is_vacuous(0));
  CHECK_FALSE(PartitionSpec::parse(Prime(3), "2:1").is_vacuous(0));
  CHECK(PartitionSpec::parse(Prime(2), "2:2").is_vacuous(0));
  CHECK(PartitionSpec::parse(Prime(2), "2:2,5:1").vacuous_levels() == std::vector<std::size_t>{0});

  CHECK_THROWS(PartitionSpec::parse(Prime(2), "3:2,3:1"));
  CHECK_THROWS(PartitionSpec::parse(Prime(2), "0:1"));
  CHECK_THROWS(PartitionSpec::parse(Prime(2), "3"));
  CHECK_THROWS(PartitionSpec::parse(Prime(2), "3:x"));
  CHECK_THROWS(PartitionSpec(Prime(23), {{1, 0}}));
}

TEST_CASE("cell labels") {
  CHECK(CellLabel::parse("Z").is_z());
  CHECK(CellLabel::parse(" 2 ").value() == 2);
  CHECK(CellLabel::cell(2).shifted(2, 3) == CellLabel::cell(1));
  CHECK(CellLabel::z().shifted(1, 3).is_z());
  CHECK_THROWS(CellLabel::z().value());
  CHECK(CellLabel::z().to_string() == "Z");
}

TEST_CASE("classification agrees with the brute-force oracle") {
  const std::vector<std::pair<unsigned, std::string>> cases = {
      {2, "1:0"},     {2, "2:0"},     {2, "2:1"},     {2, "3:1"},     {2, "3:2"},     {2, "1:0,3:0"},
      {2, "1:0,2:0"}, {2, "2:0,3:0"}, {3, "1:0"},     {3, "1:1"},     {3, "2:0"},     {3, "2:1"},
      {3, "1:0,2:0"}, {5, "1:0"},     {2, "4:1"},
  };
  for (const auto& [p, text] : cases) {
    CAPTURE(text);
    const PartitionSpec spec = PartitionSpec::parse(Prime(p), text);
    const Partition partition(spec);
    const auto levels = levels_of(spec);
    const std::size_t length = std::size_t{1} << spec.scale();
    for (const GroupElement& g : enumerate_group(Prime(p), spec.scale())) {
      const int want = oracle::classify(oracle::word_of(g.index(), p, length), p, levels);
      REQUIRE(as_int(partition.classify(g)) == want);
    }
  }
}

TEST_CASE("definition route agrees with the fast classifier") {
  for (const auto& [p, text] : {std::pair{2u, "3:1"}, std::pair{3u, "2:0"}, std::pair{2u, "1:0,3:0"}}) {
    const PartitionSpec spec = PartitionSpec::parse(Prime(p), text);
    const Partition partition(spec);
    for (const GroupElement& g : enumerate_group(Prime(p), spec.scale())) {
      const auto matches = matching_patterns(g, spec);
      CHECK(matches.size() <= 1);
      REQUIRE(classify_by_definition(g, spec) == partition.classify(g));
    }
  }
}

TEST_CASE("known members") {
  const PartitionSpec spec = PartitionSpec::parse(Prime(2), "3:2");
  // Seven or more of eight digits equal to x.
  CHECK(classify(GroupElement::parse("2,3:11111111"), spec) == CellLabel::cell(1));
  CHECK(classify(GroupElement::parse("2,3:11110111"), spec) == CellLabel::cell(1));
  CHECK(classify(GroupElement::parse("2,3:11100111"), spec).is_z());
  CHECK(classify(GroupElement::parse("2,3:00000000"), spec) == CellLabel::cell(0));
  // Coarse constants are embedded; finer elements must be constant on blocks.
  CHECK(classify(GroupElement::parse("2,1:11"), spec) == CellLabel::cell(1));
  CHECK(classify(embed(GroupElement::parse("2,3:11110111"), 5), spec) == CellLabel::cell(1));
  CHECK_THROWS(classify(GroupElement::parse("2,4:1111111111111110"), spec));
  CHECK_THROWS(classify(GroupElement::parse("3,1:11"), spec));

  // Vacuous levels leave every element in Z.
  const PartitionSpec vacuous = PartitionSpec::parse(Prime(3), "2:2");
  for (const GroupElement& g : enumerate_group(Prime(3), 2)) CHECK(classify(g, vacuous).is_z());
}

TEST_CASE("bias_contains on a single level") {
  const InnerClassifier digit = [](const GroupElement& b) { return CellLabel::cell(b[0]); };
  const GroupElement g = GroupElement::parse("2,3:11110111");
  CHECK(bias_contains(g, 3, digit, 0b10, 2));
  CHECK_FALSE(bias_contains(g, 3, digit, 0b01, 2));
  CHECK_FALSE(bias_contains(g, 3, digit, 0b10, 3));
  const InnerClassifier always_z = [](const GroupElement&) { return CellLabel::z(); };
  CHECK_FALSE(bias_contains(g, 3, always_z, 0b10, 0));
}
