#include <cmath>
#include <set>

#include "doctest.h"
#include "locent/entropy.hpp"
#include "../common/oracles.hpp"

using namespace locent;
using oracle::interval;
using oracle::ints;

namespace {

const Alphabet kBin = Alphabet::binary();

SymbolicSet at(int g, Symbol s) { return SymbolicSet::at(GroupElement{g}, s); }

SymbolicSet either(SymbolicSet a, const SymbolicSet& b) {
  a.cylinders.insert(a.cylinders.end(), b.cylinders.begin(), b.cylinders.end());
  return a;
}

Cover cover(std::vector<SymbolicSet> e) { return Cover{1, std::move(e), true}; }

double lib_h(const SFT& sft, const Measure& mu, const Partition& alpha, const std::vector<int>& f) {
  if (f.empty()) return 0.0;
  const auto fs = ints(f);
  return shannon(mu, cover_pullback(sft, alpha, fs), pullback_window(alpha, fs));
}

Measure parry() {
  const double g = (1 + std::sqrt(5.0)) / 2;
  return Measure::markov(kBin, {{1 / g, 1 / (g * g)}, {1.0, 0.0}});
}

Measure period2() {
  const std::vector<Symbol> w{0, 1};
  return Measure::periodic(kBin, w);
}

const auto kFull = SFT::full_shift(Alphabet::binary());
const auto kGolden = SFT::golden_mean();
const auto kSymbols = Cover::symbol_partition(Alphabet::binary());
const auto kBoxes = FolnerSequence::boxes(1);

}  // namespace

TEST_CASE("phi") {
  CHECK(phi(0.0) == 0.0);
  CHECK(phi(1.0) == 0.0);
  CHECK(phi(0.5) == doctest::Approx(0.5 * std::log(2.0)));
}

TEST_CASE("minimal subcovers") {
  CHECK(min_subcover(kFull, kSymbols, ints({0})).size == 2);
  CHECK(min_subcover(kFull, cover({at(0, 0), SymbolicSet::full(1)}), ints({0})).size == 1);
  const auto s = pullback_subcover(kGolden, kSymbols, interval(0, 4));
  CHECK(s.size == 13);
  CHECK(s.size == language(kGolden, interval(0, 4)).size());
  CHECK_THROWS_AS(min_subcover(kFull, cover({at(0, 0)}), ints({0})), NotACoverError);
}

TEST_CASE("topological entropy of covers") {
  const auto full = h_top(kFull, kSymbols, kBoxes, 10);
  for (const auto& v : full.values) CHECK(v.value == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(full.certified_upper == doctest::Approx(std::log(2.0)));

  const auto gm = h_top(kGolden, kSymbols, kBoxes, 16);
  for (const auto& v : gm.values)
    CHECK(v.value == doctest::Approx(std::log(double(oracle::golden_count(int(v.n)))) / v.n).epsilon(1e-13));
  for (std::size_t i = 1; i < gm.values.size(); ++i) CHECK(gm.values[i].value <= gm.values[i - 1].value + 1e-15);
  CHECK(gm.certified_upper == doctest::Approx(oracle::log_golden()).epsilon(1e-12));

  const auto triv = h_top(kFull, Cover::trivial(1), kBoxes, 5);
  CHECK(triv.certified_upper == 0.0);
  for (const auto& v : triv.values) CHECK(v.value == 0.0);
}

TEST_CASE("shannon and conditional entropy") {
  const auto half = Measure::bernoulli(kBin, {0.5, 0.5});
  const auto third = Measure::bernoulli(kBin, {1.0 / 3, 2.0 / 3});
  CHECK(shannon(half, kSymbols, ints({0})) == doctest::Approx(std::log(2.0)));
  CHECK(shannon(half, Cover::trivial(1), ints({0})) == 0.0);
  CHECK(shannon(third, kSymbols, ints({0})) ==
        doctest::Approx(std::log(3.0) / 3 + 2.0 / 3 * std::log(1.5)).epsilon(1e-14));
  CHECK(conditional(third, kSymbols, Cover::trivial(1), ints({0})) == doctest::Approx(shannon(third, kSymbols, ints({0}))));
  CHECK(conditional(third, kSymbols, kSymbols, ints({0})) == doctest::Approx(0.0));
  const auto beta = translate(kSymbols, GroupElement{1});
  CHECK(conditional(third, kSymbols, beta, interval(0, 1)) == doctest::Approx(shannon(third, kSymbols, ints({0}))));
}

TEST_CASE("static cover entropy") {
  const auto half = Measure::bernoulli(kBin, {0.5, 0.5});
  const auto p = static_cover_entropy(half, kSymbols, ints({0}));
  CHECK(p.value == doctest::Approx(std::log(2.0)));
  CHECK(p.exact);
  CHECK(static_cover_entropy(half, cover({SymbolicSet::full(1), at(0, 0)}), ints({0})).value == 0.0);
  // [0 at 0] u [0 at 1] and [1 at 0] u [1 at 1]: words 00,11 fixed, 01,10 shared
  const auto u = cover({either(at(0, 0), at(1, 0)), either(at(0, 1), at(1, 1))});
  double best = 1e9;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const double m0 = 0.25 + 0.25 * (a == 0) + 0.25 * (b == 0);
      best = std::min(best, oracle::phi(m0) + oracle::phi(1 - m0));
    }
  const auto s = static_cover_entropy(half, u, interval(0, 1));
  CHECK(s.value == doctest::Approx(best).epsilon(1e-14));
  CHECK(s.exact);
}

TEST_CASE("measure entropy of partitions") {
  for (double p : {0.5, 1.0 / 3, 0.25}) {
    const auto mu = Measure::bernoulli(kBin, {p, 1 - p});
    const auto e = h_mu_partition(kFull, mu, kSymbols, kBoxes, 6);
    const double expected = oracle::phi(p) + oracle::phi(1 - p);
    CHECK(e.exact);
    CHECK(std::abs(e.certified_upper - expected) < 1e-12);
    for (const auto& v : e.values) CHECK(std::abs(v.value - expected) < 1e-12);
  }
  const auto per = h_mu_partition(kFull, period2(), kSymbols, kBoxes, 8);
  for (const auto& v : per.values) CHECK(v.value <= std::log(2.0) / v.n + 1e-12);
  CHECK(per.certified_upper == doctest::Approx(0.0));

  const auto mk = h_mu_partition(kGolden, parry(), kSymbols, kBoxes, 10);
  const double rate = oracle::markov_rate(parry().transition(), parry().stationary());
  CHECK(rate == doctest::Approx(oracle::log_golden()).epsilon(1e-12));
  for (std::size_t i = 1; i < mk.values.size(); ++i) CHECK(mk.values[i].value <= mk.values[i - 1].value + 1e-12);
  CHECK(mk.values.back().value >= rate - 1e-12);
  CHECK(mk.certified_upper == doctest::Approx(rate).epsilon(1e-12));
}

TEST_CASE("measure entropy of covers") {
  const auto half = Measure::bernoulli(kBin, {0.5, 0.5});
  const auto part = h_mu_partition(kFull, half, kSymbols, kBoxes, 5);
  const auto minus = h_mu_minus_cover(kFull, half, kSymbols, kBoxes, 5);
  const auto upper = h_mu_cover(kFull, half, kSymbols, kBoxes, 5, 1);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(minus.values[i].value == doctest::Approx(part.values[i].value));
    CHECK(upper.estimate.values[i].value == doctest::Approx(part.values[i].value));
  }
  CHECK(h_mu_minus_cover(kFull, half, Cover::trivial(1), kBoxes, 4).values.back().value == 0.0);
  CHECK(h_mu_cover(kFull, half, Cover::trivial(1), kBoxes, 4, 1).estimate.certified_upper == 0.0);

  const auto u = cover({either(at(0, 1), at(1, 0)), SymbolicSet{1, {Pattern(ints({0}), {0})}}});
  const auto top = h_top(kFull, u, kBoxes, 6);
  const auto m = h_mu_minus_cover(kFull, half, u, kBoxes, 6);
  const auto c = h_mu_cover(kFull, half, u, kBoxes, 6, 2);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(m.values[i].value <= top.values[i].value + 1e-12);
    CHECK(m.values[i].value <= c.estimate.values[i].value + 1e-12);
  }
  CHECK(c.candidates > 0);
  CHECK(c.estimate.certified_upper <= c.estimate.values.back().value + 1e-12);
}

TEST_CASE("katok counts") {
  const auto half = Measure::bernoulli(kBin, {0.5, 0.5});
  for (int n = 1; n <= 8; ++n) {
    const auto k = katok_b(kFull, half, interval(0, n - 1), 0.9, kSymbols);
    CHECK(k.count == static_cast<std::size_t>(std::ceil(0.9 * std::pow(2.0, n) - 1e-9)));
    CHECK(k.exact);
  }
  CHECK(katok_b(kFull, half, interval(0, 3), 1e-9, kSymbols).count == 1);
  CHECK(katok_b(kFull, half, interval(0, 3), 0.99, cover({SymbolicSet::full(1), at(0, 0)})).count == 1);

  const auto est = katok_entropy(kFull, half, kSymbols, kBoxes, 10, 0.1);
  CHECK(est.weiss_all);
  for (const auto& w : est.windows)
    CHECK(w.value == doctest::Approx(std::log(std::ceil(0.9 * std::pow(2.0, w.n) - 1e-9)) / w.n));
  const auto per = katok_entropy(kFull, period2(), kSymbols, kBoxes, 8, 0.1);
  for (const auto& w : per.windows) CHECK(w.value <= std::log(2.0) / w.n + 1e-12);
  const auto triv = katok_entropy(kFull, half, Cover::trivial(1), kBoxes, 5, 0.1);
  for (const auto& w : triv.windows) CHECK(w.value == 0.0);
}

TEST_CASE("separated sets") {
  std::vector<Partition> one{kSymbols};
  const auto s = separated_set(kGolden, kSymbols, one, interval(0, 3));
  CHECK(s.points.size() == pullback_subcover(kGolden, kSymbols, interval(0, 3)).size);
  CHECK(s.bound_holds);
  const auto u = cover({either(at(0, 0), at(1, 0)), either(at(0, 1), at(1, 1))});
  std::vector<Partition> two{atoms(kGolden, u, interval(0, 1)), translate(kSymbols, GroupElement{1})};
  const auto t = separated_set(kGolden, u, two, interval(0, 3));
  CHECK(static_cast<double>(t.points.size()) >= std::ceil(t.n_cover / 2.0));
  CHECK(t.at_most_one_per_atom);
}

TEST_CASE("variational principle checks") {
  const auto half = Measure::bernoulli(kBin, {0.5, 0.5});
  std::vector<Measure> just_half{half};
  const auto r = vp_check(kFull, kSymbols, just_half, kBoxes, 6);
  CHECK(std::abs(r.gap) < 1e-12);
  CHECK(r.one_sided_ok);
  std::vector<Measure> per{period2()};
  const auto q = vp_check(kFull, kSymbols, per, kBoxes, 6);
  CHECK(q.gap == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  std::vector<Measure> sweep;
  for (int i = 1; i <= 9; ++i) sweep.push_back(Measure::markov(kBin, {{i / 10.0, 1 - i / 10.0}, {1.0, 0.0}}));
  const auto g = vp_check(kGolden, kSymbols, sweep, kBoxes, 10);
  CHECK(g.argmax == 5);  // p = 0.6, nearest to 1 / golden ratio
  CHECK(g.one_sided_ok);
  CHECK(g.gap >= -1e-12);
}

TEST_CASE("empirical measures from separated sets") {
  std::vector<Partition> one{kSymbols};
  const auto mu = empirical_vp_measure(kFull, kSymbols, 8, one, kBoxes);
  CHECK(std::abs(mu.cylinder_mass(Pattern(ints({0}), {0})) - 0.5) < 0.1);
  CHECK(std::abs(shannon(mu, cover_pullback(kFull, kSymbols, interval(0, 3)), interval(0, 3)) / 4 - std::log(2.0)) <
        0.1);
  const auto gm = empirical_vp_measure(kGolden, kSymbols, 10, one, kBoxes);
  CHECK(gm.cylinder_mass(Pattern(interval(0, 1), {1, 1})) == 0.0);
  std::vector<Partition> whole{Cover::trivial(1)};
  const auto triv = empirical_vp_measure(kFull, Cover::trivial(1), 4, whole, kBoxes);
  CHECK(triv.empirical_spec().base_points.size() == 1);
  CHECK(static_cover_entropy(triv, Cover::trivial(1), interval(0, 3)).value == 0.0);
}

TEST_CASE("folner independence") {
  const auto box = h_top(kGolden, kSymbols, kBoxes, 12);
  const auto sq = h_top(kGolden, kSymbols, FolnerSequence::shifted({0, 0, 1}), 12);
  for (std::size_t i = 0; i < 12; ++i) CHECK(box.values[i].value == sq.values[i].value);
}

TEST_CASE("property: library window entropy agrees with enumeration") {
  oracle::Rng rng(51);
  for (int t = 0; t < 60; ++t) {
    const auto alpha = oracle::random_partition(rng, 2, oracle::uniform(rng, 1, 2), 4);
    const double p = 0.05 + 0.9 * oracle::uniform01(rng);
    const auto mu = Measure::bernoulli(kBin, {p, 1 - p});
    const auto f = oracle::random_subset(rng, 0, 5);
    CHECK(std::abs(lib_h(kFull, mu, alpha.cover(), f) - oracle::joint_entropy(alpha, {p, 1 - p}, f)) < 1e-12);
  }
}

TEST_CASE("property: strong subadditivity") {
  oracle::Rng rng(52);
  for (int t = 0; t < 60; ++t) {
    const auto alpha = oracle::random_partition(rng, 2, oracle::uniform(rng, 1, 2), 4).cover();
    const double p = oracle::uniform01(rng);
    const auto mu = Measure::bernoulli(kBin, {p, 1 - p});
    const auto e = oracle::random_subset(rng, 0, 5), f = oracle::random_subset(rng, 0, 5);
    std::set<int> u(e.begin(), e.end()), i;
    u.insert(f.begin(), f.end());
    for (int x : e)
      if (std::find(f.begin(), f.end(), x) != f.end()) i.insert(x);
    const double lhs = lib_h(kFull, mu, alpha, {u.begin(), u.end()}) + lib_h(kFull, mu, alpha, {i.begin(), i.end()});
    CHECK(lhs <= lib_h(kFull, mu, alpha, e) + lib_h(kFull, mu, alpha, f) + 1e-12);
  }
}

TEST_CASE("property: join subadditivity of cover entropy") {
  oracle::Rng rng(53);
  for (int t = 0; t < 40; ++t) {
    const auto u = oracle::random_cover(rng, 2, 2, oracle::uniform(rng, 2, 3)).cover();
    const auto v = translate(oracle::random_cover(rng, 2, 2, oracle::uniform(rng, 2, 3)).cover(), GroupElement{1});
    std::vector<Cover> uv{u, v};
    const auto w = interval(0, 2);
    const auto nj = min_subcover(kFull, join(kFull, uv), w).size;
    CHECK(nj <= min_subcover(kFull, u, w).size * min_subcover(kFull, v, w).size);
    CHECK(nj >= min_subcover(kFull, u, w).size);
  }
}
