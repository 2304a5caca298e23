#include <doctest.h>

#include <set>

#include "bohrsets/enumeration.hpp"
#include "bohrsets/parallel.hpp"
#include "bohrsets/random.hpp"

using namespace bohrsets;

TEST_CASE("group orders") {
  CHECK(group_order(Prime(2), 3) == 256);
  CHECK(group_order(Prime(3), 2) == 81);
  CHECK(group_order_u64(Prime(2), 6) == 0);
  CHECK(group_order_u64(Prime(2), 5) == 4294967296ULL);
  CHECK(group_order(Prime(2), 6).get_str() == "18446744073709551616");
}

TEST_CASE("enumeration visits each element once in index order") {
  std::uint64_t expected = 0;
  for (const GroupElement& g : enumerate_group(Prime(3), 2)) CHECK(g.index() == expected++);
  CHECK(expected == 81);
}

TEST_CASE("ranges split into contiguous covering parts") {
  const GroupRange all = enumerate_group(Prime(2), 3);
  const auto parts = all.split(7);
  std::uint64_t next = 0;
  for (const auto& r : parts) {
    CHECK(r.first() == next);
    for (const GroupElement& g : r) CHECK(g.index() == next++);
  }
  CHECK(next == 256);
}

TEST_CASE("budget") {
  CHECK_THROWS_AS(enumerate_group(Prime(2), 4, Budget{1000}), BudgetExceeded);
  CHECK_NOTHROW(require_within(mpz_class(1000), Budget{1000}, "x"));
  CHECK_THROWS_AS(require_within(mpz_class(1001), Budget{1000}, "x"), BudgetExceeded);
  CHECK_THROWS_AS(enumerate_group(Prime(2), 6), BudgetExceeded);
}

TEST_CASE("split random streams are reproducible and distinct") {
  SplitRng a(42), b(42);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  SplitRng c = SplitRng(42).split(1), d = SplitRng(42).split(2);
  CHECK(c.next() != d.next());
  SplitRng e(7);
  for (int i = 0; i < 1000; ++i) CHECK(e.below(13) < 13);
  CHECK_THROWS(e.below(0));
  const mpz_class bound("100000000000000000000000");
  for (int i = 0; i < 50; ++i) {
    const mpz_class v = uniform_below(bound, e);
    CHECK(v >= 0);
    CHECK(v < bound);
  }
}

TEST_CASE("parallel_for covers every index and forwards exceptions") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (const int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 3) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
  CHECK(thread_count() >= 1);
}
