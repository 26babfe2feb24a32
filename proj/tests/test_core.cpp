#include <doctest.h>

#include <algorithm>
#include <set>

#include "npg/core.hpp"
#include "test_util.hpp"

using namespace npg;
using npg::testing::vec;

TEST_CASE("support_of keeps entries above the threshold") {
  CHECK(support_of(vec({3, 0, 2}), 0.0) == Support{0, 2});
  CHECK(support_of(vec({0, 0, 0}), 0.0).empty());
  CHECK(support_of(vec({1e-13, 1.0}), 1e-12) == Support{1});
  CHECK(count_nonzero(vec({0, -1, 0, 2})) == 2);
}

TEST_CASE("sorting_permutation is stable on ties") {
  using P = std::vector<Index>;
  CHECK(sorting_permutation(vec({1, 3, 2})) == P{1, 2, 0});
  CHECK(sorting_permutation(vec({2, 2, 2})) == P{0, 1, 2});
  CHECK(sorting_permutation(vec({0, 5, 5, -1})) == P{1, 2, 0, 3});
}

TEST_CASE("sorting_permutation is a sorting bijection") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 1 + static_cast<Index>(rng.below(30));
    Vector v(n);
    // coarse values force plenty of ties
    for (Index i = 0; i < n; ++i) v[i] = std::round(3.0 * rng.normal());
    const auto perm = sorting_permutation(v);
    std::set<Index> seen(perm.begin(), perm.end());
    REQUIRE(static_cast<Index>(seen.size()) == n);
    REQUIRE(*seen.begin() == 0);
    REQUIRE(*seen.rbegin() == n - 1);
    for (Index k = 0; k + 1 < n; ++k) {
      const Index a = perm[static_cast<std::size_t>(k)];
      const Index b = perm[static_cast<std::size_t>(k + 1)];
      REQUIRE(v[a] >= v[b]);
      if (v[a] == v[b]) REQUIRE(a < b);
    }
    REQUIRE(static_cast<Index>(support_of(v).size()) == (v.array() != 0.0).count());
  }
}

TEST_CASE("gather, scatter and complement") {
  const Vector x = vec({5, 6, 7, 8});
  const Support t{1, 3};
  CHECK(gather(x, t) == vec({6, 8}));
  CHECK(scatter(vec({6, 8}), t, 4) == vec({0, 6, 0, 8}));
  CHECK(complement(t, 4) == Support{0, 2});
  CHECK(complement({}, 2) == Support{0, 1});
}

TEST_CASE("binomial_capped") {
  CHECK(binomial_capped(8, 3, 1000) == 56);
  CHECK(binomial_capped(20, 10, 1'000'000) == 184756);
  CHECK(binomial_capped(100, 50, 1'000'000) == 1'000'000);
  CHECK(binomial_capped(3, 5, 10) == 0);
}

TEST_CASE("Rng uses the standard mt19937_64 stream") {
  // the C++ standard fixes the 10000th output for the default seed
  Rng rng(5489);
  std::uint64_t value = 0;
  for (int i = 0; i < 10000; ++i) value = rng.next_u64();
  CHECK(value == 9981545732273789042ULL);
}

TEST_CASE("Rng is reproducible and its distributions are sane") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) REQUIRE(a.normal() == b.normal());

  Rng rng(7);
  double sum = 0.0, sum_sq = 0.0;
  const int count = 20000;
  for (int i = 0; i < count; ++i) {
    const double z = rng.normal();
    sum += z;
    sum_sq += z * z;
  }
  CHECK(std::abs(sum / count) < 0.05);
  CHECK(std::abs(sum_sq / count - 1.0) < 0.05);

  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    REQUIRE(rng.below(7) < 7);
  }

  const Support subset = rng.sample_subset(50, 10);
  CHECK(subset.size() == 10);
  CHECK(std::is_sorted(subset.begin(), subset.end()));
  CHECK(std::adjacent_find(subset.begin(), subset.end()) == subset.end());
  CHECK_THROWS_AS(rng.sample_subset(3, 4), Error);
}
