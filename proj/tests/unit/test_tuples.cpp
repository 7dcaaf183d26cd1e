#include "doctest.h"
#include "locent/tuples.hpp"
#include "../common/oracles.hpp"

using namespace locent;
using oracle::interval;
using oracle::ints;

namespace {

const Alphabet kBin = Alphabet::binary();
const auto kFull = SFT::full_shift(Alphabet::binary());
const auto kGolden = SFT::golden_mean();

SFT period2() {
  const std::vector<Symbol> w{0, 1};
  return SFT::periodic_orbit(Alphabet::binary(), w);
}

Measure period2_measure() {
  const std::vector<Symbol> w{0, 1};
  return Measure::periodic(kBin, w);
}

TupleCandidate symbols(std::vector<Symbol> s) {
  TupleCandidate c;
  for (auto x : s) c.points.emplace_back(ints({0}), std::vector<Symbol>{x});
  return c;
}

SymbolicSet at(int g, Symbol s) { return SymbolicSet::at(GroupElement{g}, s); }

}  // namespace

TEST_CASE("admissible covers") {
  const auto a = admissible_cover(kFull, symbols({0, 1}));
  REQUIRE(a.cover.size() == 2);
  CHECK(same_set(kFull, a.cover.elements[0], at(0, 1)));
  CHECK(same_set(kFull, a.cover.elements[1], at(0, 0)));
  CHECK_THROWS(admissible_cover(kFull, symbols({1, 1})));

  TupleCandidate g;
  g.r = 1;
  g.points = {Pattern(interval(-1, 1), {0, 0, 0}), Pattern(interval(-1, 1), {0, 1, 0})};
  const auto b = admissible_cover(kGolden, g);
  CHECK(b.cover.size() == 2);
  CHECK(is_cover(kGolden, b.cover, interval(-1, 1)));
  TupleCandidate bad = g;
  bad.points[1] = Pattern(interval(-1, 1), {1, 1, 0});
  CHECK_THROWS(admissible_cover(kGolden, bad));
}

TEST_CASE("candidate extension") {
  TupleCandidate c = symbols({1, 0});
  const auto e = extend_candidate(kGolden, c);
  CHECK(e.r == 1);
  CHECK(e.points[0] == Pattern(interval(-1, 1), {0, 1, 0}));
  CHECK(e.points[1] == Pattern(interval(-1, 1), {0, 0, 0}));
}

TEST_CASE("topological tuple verdicts") {
  const auto full = is_entropy_tuple(kFull, symbols({0, 1}), 1, 6, 0.01);
  CHECK(full.verdict == Verdict::positive);
  CHECK(full.resolutions.front().certified_upper == doctest::Approx(std::log(2.0)));
  const auto per = is_entropy_tuple(period2(), symbols({0, 1}), 1, 6);
  CHECK(per.verdict == Verdict::negative);
  CHECK(per.resolutions.front().certified_upper < 1e-3);
  const auto triple = is_entropy_tuple(SFT::full_shift(Alphabet({"a", "b", "c"})), symbols({0, 1, 2}), 0, 6);
  CHECK(triple.verdict == Verdict::positive);
  CHECK_THROWS(is_entropy_tuple(kFull, symbols({0, 0}), 1, 4));
}

TEST_CASE("uniform positive entropy") {
  const auto f = upe_check(kFull, 1, 5);
  CHECK(f.status == UpeReport::Status::evidence);
  CHECK(f.pairs == 28);
  const auto p = upe_check(period2(), 0, 5);
  CHECK(p.status == UpeReport::Status::refuted);
  REQUIRE(p.witness);
  CHECK(p.witness->points.size() == 2);
  const auto g = upe_check(kGolden, 1, 6);
  CHECK(g.status == UpeReport::Status::evidence);
  CHECK(g.positive == g.pairs);
}

TEST_CASE("lambda_n") {
  const SymbolicSet zero = at(0, 0), one = at(0, 1);
  const auto half = lambda_n(Measure::bernoulli(kBin, {0.5, 0.5}), 2);
  CHECK(half.variant == LambdaVariant::product);
  CHECK(half.mass({zero, one}) == doctest::Approx(0.25));
  const auto diag = lambda_n(period2_measure(), 2);
  CHECK(diag.variant == LambdaVariant::diagonal);
  CHECK(diag.mass({zero, one}) == 0.0);
  CHECK(diag.mass({zero, zero}) == doctest::Approx(0.5));
  const auto third = lambda_n(Measure::bernoulli(kBin, {1.0 / 3, 2.0 / 3}), 3);
  CHECK(third.mass({zero, zero, one}) == doctest::Approx(2.0 / 27));
  CHECK_THROWS(lambda_n(Measure::bernoulli(kBin, {0.5, 0.5}), 2).mass({zero}));
  const auto mix = Measure::convex({0.5, 0.5}, {Measure::bernoulli(kBin, {0.5, 0.5}), period2_measure()});
  CHECK_THROWS_AS(lambda_n(mix, 2), std::invalid_argument);
}

TEST_CASE("measure tuple equivalence") {
  const auto half = Measure::bernoulli(kBin, {0.5, 0.5});
  const auto u = admissible_cover(kFull, symbols({0, 1})).cover;
  const auto r = measure_tuple_check(kFull, half, u, FolnerSequence::boxes(1), 4);
  CHECK(r.lambda_mass == doctest::Approx(0.25));
  CHECK(r.entropy == Verdict::positive);
  CHECK(r.agree);
  const auto p = measure_tuple_check(period2(), period2_measure(), admissible_cover(period2(), symbols({0, 1})).cover,
                                     FolnerSequence::boxes(1), 6);
  CHECK(p.lambda_mass == 0.0);
  CHECK(p.entropy == Verdict::negative);
  CHECK(p.agree);
  const Cover degenerate{1, {SymbolicSet::full(1), at(0, 0)}, true};
  const auto d = measure_tuple_check(kFull, half, degenerate, FolnerSequence::boxes(1), 4);
  CHECK(d.degenerate);
  CHECK(d.lambda_mass == 0.0);
}

TEST_CASE("product formula") {
  std::vector<TupleCandidate> cands;
  const auto prod = SFT::product(kFull, kFull);
  auto sym = [&](const char* a, const char* b) {
    TupleCandidate c;
    c.points = {Pattern(ints({0}), {prod.alphabet().index_of(a)}), Pattern(ints({0}), {prod.alphabet().index_of(b)})};
    return c;
  };
  cands.push_back(sym("0|0", "1|1"));
  cands.push_back(sym("0|0", "1|0"));
  const auto r = product_tuple_check(kFull, kFull, cands, 4);
  CHECK(r.disagreements == 0);
  CHECK(r.cases[0].predicted == Verdict::positive);
  CHECK(r.cases[1].second_diagonal);
  CHECK(r.cases[1].predicted == Verdict::positive);

  const auto pp = SFT::product(period2(), period2());
  std::vector<TupleCandidate> zero;
  TupleCandidate c;
  c.points = {Pattern(ints({0}), {pp.alphabet().index_of("0|0")}), Pattern(ints({0}), {pp.alphabet().index_of("1|1")})};
  zero.push_back(c);
  const auto z = product_tuple_check(period2(), period2(), zero, 6);
  CHECK(z.cases[0].predicted == Verdict::negative);
  CHECK(z.cases[0].observed == Verdict::negative);
}

TEST_CASE("pair cover separation") {
  std::vector<GroupElement> g;
  for (int i = 0; i < 4; ++i) g.push_back(GroupElement{i});
  const auto s = pair_cover_separation(kFull, at(0, 1), at(0, 0), g);
  CHECK(s.bound_exceeded);
  REQUIRE(s.witness);
  CHECK(s.witness->first < s.witness->second);
  const auto none = pair_cover_separation(kFull, SymbolicSet::empty(1), at(0, 0), g);
  CHECK(none.count == 1);
  CHECK_FALSE(none.witness);
  const auto per = pair_cover_separation(period2(), at(0, 1), at(0, 0), g);
  CHECK(per.count <= 2);
  CHECK_FALSE(per.witness);
}

TEST_CASE("property: full shift pairs are entropy pairs") {
  oracle::Rng rng(61);
  for (int t = 0; t < 15; ++t) {
    TupleCandidate c;
    c.r = 1;
    std::vector<Symbol> a(3), b(3);
    do {
      for (auto& x : a) x = static_cast<Symbol>(rng() & 1);
      for (auto& x : b) x = static_cast<Symbol>(rng() & 1);
    } while (a == b);
    c.points = {Pattern(interval(-1, 1), a), Pattern(interval(-1, 1), b)};
    CHECK(is_entropy_tuple(kFull, c, 1, 5).verdict == Verdict::positive);
    const auto u = admissible_cover(kFull, c).cover;
    const auto m = measure_tuple_check(kFull, Measure::bernoulli(kBin, {0.5, 0.5}), u, FolnerSequence::boxes(1), 3);
    CHECK(m.lambda_positive);
    CHECK(m.agree);
  }
}
