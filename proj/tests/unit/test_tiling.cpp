#include <cmath>
#include <variant>

#include "doctest.h"
#include "locent/tiling.hpp"
#include "../common/oracles.hpp"

using namespace locent;
using oracle::interval;
using oracle::ints;

TEST_CASE("epsilon-disjoint check") {
  {
    std::vector<FiniteSubset> fam{interval(0, 9), interval(10, 19)};
    const auto r = epsilon_disjoint_check(fam, 0.1);
    const auto* w = std::get_if<DisjointFamilyWitness>(&r);
    REQUIRE(w);
    CHECK(w->cores == fam);
  }
  {
    std::vector<FiniteSubset> fam{interval(0, 9), interval(9, 18)};
    const auto r = epsilon_disjoint_check(fam, 0.2);
    const auto* w = std::get_if<DisjointFamilyWitness>(&r);
    REQUIRE(w);
    CHECK(w->cores[0] == interval(0, 9));
    CHECK(w->cores[1] == interval(10, 18));
  }
  {
    std::vector<FiniteSubset> fam{interval(0, 9), interval(0, 9)};
    const auto r = epsilon_disjoint_check(fam, 0.5);
    REQUIRE(std::holds_alternative<DisjointFailure>(r));
    CHECK(std::get<DisjointFailure>(r).index == 1);
  }
}

TEST_CASE("even cover translates") {
  const auto w = even_cover_translates(interval(0, 9), interval(0, 99), 0.25);
  CHECK(w.members.size() == 91);
  CHECK(w.multiplicity_bound == 10);
  CHECK(w.total_size == 910);
  CHECK(is_even_cover(w.members, interval(0, 99), 10, 0.25));
  // pointwise multiplicity, equality on the interior
  for (int g = 0; g <= 99; ++g) {
    std::size_t c = 0;
    for (const auto& m : w.members) c += m.contains(GroupElement{g});
    CHECK(c <= 10);
    if (g >= 9 && g <= 90) CHECK(c == 10);
  }

  const auto single = even_cover_translates(ints({0}), ints({3, 5, 8}), 0.4);
  CHECK(single.members.size() == 3);
  CHECK(single.multiplicity_bound == 1);
  CHECK(single.total_size == 3);

  const auto sq = even_cover_translates(FiniteSubset::box({0, 0}, {1, 1}), FiniteSubset::box({0, 0}, {9, 9}), 0.5);
  CHECK(sq.members.size() == 81);
  CHECK(sq.multiplicity_bound == 4);

  CHECK_THROWS_AS(even_cover_translates(interval(1, 3), interval(0, 99), 0.25), PreconditionError);
  CHECK_THROWS_AS(even_cover_translates(interval(0, 9), interval(0, 11), 0.01), PreconditionError);
}

TEST_CASE("disjoint subcover selection") {
  const auto target = interval(0, 99);
  const auto w = even_cover_translates(interval(0, 9), target, 0.25);
  const auto s = select_disjoint_subcover(w.members, target, 0.2, 0.25);
  CHECK(s.covered >= 15);
  CHECK(s.admitted.size() == 10);
  CHECK(s.covered == 100);

  std::vector<FiniteSubset> whole{target};
  const auto one = select_disjoint_subcover(whole, target, 0.3, 0.0);
  CHECK(one.admitted.size() == 1);
  CHECK(one.covered == 100);

  std::vector<FiniteSubset> parts{interval(0, 3), interval(4, 7), interval(8, 9)};
  const auto all = select_disjoint_subcover(parts, interval(0, 9), 0.1, 0.0);
  CHECK(all.admitted.size() == 3);
  CHECK(all.covered == 10);
}

TEST_CASE("tiling parameters") {
  const auto p = choose_tiling_parameters(0.2);
  CHECK(p.k == 16);
  for (double eps : {0.05, 0.1, 0.2, 0.24}) {
    const auto q = choose_tiling_parameters(eps);
    int k = 1;
    while (std::pow(1 - eps / 2, k) >= eps) ++k;
    CHECK(q.k == k);
    CHECK(std::pow(1 - eps / 2, q.k) < eps);
    CHECK(std::pow(1 - eps / 2, q.k - 1) >= eps);
    CHECK(std::pow(6.0, q.k) * q.delta < eps / 2);
  }
}

TEST_CASE("quasi-tiling examples") {
  std::vector<FiniteSubset> shapes{interval(0, 9)};
  const auto t = quasi_tile(shapes, interval(0, 999), 0.2);
  CHECK(t.ok);
  CHECK(t.coverage == 1.0);
  std::vector<GroupElement> expected;
  for (int c = 0; c <= 990; c += 10) expected.push_back(GroupElement{c});
  CHECK(t.centers[0] == FiniteSubset(1, expected));
  CHECK(verify_quasi_tiling(t).all());

  std::vector<FiniteSubset> unit{ints({0})};
  const auto target = ints({-4, 2, 7, 30});
  const auto u = quasi_tile(unit, target, 0.1);
  CHECK(u.centers[0] == target);
  CHECK(u.coverage == 1.0);

  std::vector<FiniteSubset> boxes{FiniteSubset::box({0, 0}, {4, 4}), FiniteSubset::box({0, 0}, {19, 19})};
  const auto b = quasi_tile(boxes, FiniteSubset::box({0, 0}, {199, 199}), 0.2);
  CHECK(b.coverage >= 0.8);
  CHECK(verify_quasi_tiling(b).all());
}

TEST_CASE("quasi-tiling reports coverage misses") {
  std::vector<FiniteSubset> shapes{interval(0, 9)};
  const auto t = quasi_tile(shapes, interval(0, 14), 0.2);
  CHECK_FALSE(t.ok);
  CHECK(t.coverage == doctest::Approx(10.0 / 15.0));
  std::vector<FiniteSubset> big{interval(0, 99)};
  const auto none = quasi_tile(big, interval(0, 9), 0.2);
  CHECK(none.centers[0].empty());
  CHECK_FALSE(none.ok);
}

TEST_CASE("property: interval tiling coverage under a disjoint copy") {
  oracle::Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const int len = oracle::uniform(rng, 2, 12);
    const int n = oracle::uniform(rng, len, 200);
    const int gap = oracle::uniform(rng, 1, 20);
    std::vector<FiniteSubset> shapes{interval(0, len - 1)};
    const auto a = quasi_tile(shapes, interval(0, n - 1), 0.2);
    const auto b = quasi_tile(shapes, set_union(interval(0, n - 1), interval(n + gap, 2 * n + gap - 1)), 0.2);
    CHECK(b.coverage >= a.coverage - 1e-12);
    for (const auto& q : {verify_quasi_tiling(a), verify_quasi_tiling(b)}) {
      CHECK(q.inside_target);
      CHECK(q.epsilon_disjoint);
      CHECK(q.pairwise_disjoint);
    }
    const int m = len * oracle::uniform(rng, 1, 20);
    const auto c = quasi_tile(shapes, interval(0, m - 1), 0.2);
    const auto d = quasi_tile(shapes, interval(0, 2 * m - 1), 0.2);
    CHECK(d.coverage >= c.coverage - 1e-12);
  }
  // adjacent copies can lose an overlapping edge tile
  std::vector<FiniteSubset> ten{interval(0, 9)};
  CHECK(quasi_tile(ten, interval(0, 178), 0.2).coverage == 1.0);
  CHECK(quasi_tile(ten, interval(0, 357), 0.2).coverage < 1.0);
}

TEST_CASE("property: selection meets the covering bound") {
  oracle::Rng rng(6);
  for (int t = 0; t < 40; ++t) {
    const int len = oracle::uniform(rng, 2, 6);
    const int n = oracle::uniform(rng, 20 * len, 60 * len);
    const double delta = 2.0 * (len - 1) / n + 0.05;
    const auto w = even_cover_translates(interval(0, len - 1), interval(0, n - 1), delta);
    const double eps = 0.05 + 0.2 * oracle::uniform01(rng);
    const auto s = select_disjoint_subcover(w.members, interval(0, n - 1), eps, delta);
    CHECK(static_cast<double>(s.covered) >= eps * (1 - delta) * n - 1e-9);
  }
}

TEST_CASE("tiling index selection") {
  const auto idx = select_tiling_indices(FolnerSequence::boxes(1), 2, 0.1, 2, 400);
  REQUIRE(idx);
  REQUIRE(idx->size() == 2);
  const auto f1 = folner(FolnerSequence::boxes(1), (*idx)[0]);
  const auto f2 = folner(FolnerSequence::boxes(1), (*idx)[1]);
  CHECK(static_cast<double>(f1.size()) / f2.size() < 0.1);
  CHECK(invariance_ratio(f2, set_product(f1, inverse_set(f1))).ratio < 0.1);
  CHECK_FALSE(select_tiling_indices(FolnerSequence::boxes(1), 3, 0.01, 2, 50));
}
