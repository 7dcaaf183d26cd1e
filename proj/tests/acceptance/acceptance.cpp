// Acceptance criteria 1-11. One PASS/FAIL line per criterion; exit status 1
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include "locent/tiling.hpp"
#include "locent/tuples.hpp"
#include "../common/oracles.hpp"

using namespace locent;
using oracle::interval;
using oracle::ints;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... xs) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, xs...);
  return buf;
}

const Alphabet kBin = Alphabet::binary();
const auto kFull = SFT::full_shift(Alphabet::binary());
const auto kGolden = SFT::golden_mean();
const auto kSymbols = Cover::symbol_partition(Alphabet::binary());
const auto kBoxes = FolnerSequence::boxes(1);

SFT period2() {
  const std::vector<Symbol> w{0, 1};
  return SFT::periodic_orbit(Alphabet::binary(), w);
}

SymbolicSet at(int g, Symbol s) { return SymbolicSet::at(GroupElement{g}, s); }

SymbolicSet either(SymbolicSet a, const SymbolicSet& b) {
  a.cylinders.insert(a.cylinders.end(), b.cylinders.begin(), b.cylinders.end());
  return a;
}

double lib_h(const Measure& mu, const Partition& alpha, const std::vector<int>& f) {
  if (f.empty()) return 0.0;
  const auto fs = ints(f);
  return shannon(mu, cover_pullback(kFull, alpha, fs), pullback_window(alpha, fs));
}

// ---------------------------------------------------------------- 1
Outcome golden_top() {
  const auto t0 = Clock::now();
  const auto e = h_top(kGolden, kSymbols, kBoxes, 20);
  const double secs = seconds_since(t0);
  Outcome o;
  double inf = 1e300;
  for (const auto& v : e.values) {
    const double expected = std::log(static_cast<double>(oracle::golden_count(static_cast<int>(v.n)))) / v.n;
    if (std::abs(v.value - expected) > 1e-12) o.pass = false;
    if (v.value > inf + 1e-15) o.pass = false;
    inf = std::min(inf, v.value);
  }
  const double err = std::abs(e.certified_upper - oracle::log_golden());
  o.pass = o.pass && e.values.size() == 20 && err <= 2e-2 && e.certified_upper <= e.running_infimum + 1e-15 &&
           secs < 5.0;
  o.detail = fmt("certified %.9f (%s), |err| %.2e, value(20) %.6f, %.2fs", e.certified_upper, e.bound_source.c_str(),
                 err, e.values.back().value, secs);
  return o;
}

// ---------------------------------------------------------------- 2
Outcome bernoulli_exact() {
  Outcome o;
  for (double p : {0.5, 1.0 / 3, 0.25}) {
    const auto e = h_mu_partition(kFull, Measure::bernoulli(kBin, {p, 1 - p}), kSymbols, kBoxes, 8);
    const double expected = oracle::phi(p) + oracle::phi(1 - p);
    double worst = std::abs(e.certified_upper - expected);
    for (const auto& v : e.values) worst = std::max(worst, std::abs(v.value - expected));
    o.pass = o.pass && e.exact && worst <= 1e-12;
    o.detail += fmt("p=%.4f err %.1e exact=%d; ", p, worst, int(e.exact));
  }
  return o;
}

// ---------------------------------------------------------------- 3
Outcome variational() {
  const auto t0 = Clock::now();
  const auto top = h_top(kGolden, kSymbols, kBoxes, 18);
  double best = -1, best_p = 0, worst_closed = 0;
  for (int i = 0; i <= 16; ++i) {
    const double p = 0.3 + 0.4 * i / 16;
    const auto mu = Measure::markov(kBin, {{p, 1 - p}, {1.0, 0.0}});
    const auto e = h_mu_partition(kGolden, mu, kSymbols, kBoxes, 18);
    worst_closed = std::max(worst_closed,
                            std::abs(e.certified_upper - oracle::markov_rate(mu.transition(), mu.stationary())));
    if (e.certified_upper > best) {
      best = e.certified_upper;
      best_p = p;
    }
  }
  const double secs = seconds_since(t0);
  const double gap = top.certified_upper - best;
  const double parry_p = 1.0 / ((1 + std::sqrt(5.0)) / 2);
  Outcome o;
  o.pass = std::abs(gap) <= 1e-3 && std::abs(best_p - parry_p) <= 0.4 / 16 && worst_closed <= 1e-9 && secs < 30.0;
  o.detail = fmt("top %.9f, best measure %.9f at p=%.4f (Parry %.4f), gap %.2e, closed-form err %.1e, %.2fs",
                 top.certified_upper, best, best_p, parry_p, gap, worst_closed, secs);
  return o;
}

// ---------------------------------------------------------------- 4
Outcome minus_equivalence() {
  const auto half = Measure::bernoulli(kBin, {0.5, 0.5});
  const std::vector<std::pair<const char*, Cover>> covers{
      {"[0@0]u[0@1] | [1@0]", Cover{1, {either(at(0, 0), at(1, 0)), at(0, 1)}, true}},
      {"[0@0] | [1@0]u[1@1]", Cover{1, {at(0, 0), either(at(0, 1), at(1, 1))}, true}},
      {"[0@0]u[1@1] | [1@0]u[0@1]", Cover{1, {either(at(0, 0), at(1, 1)), either(at(0, 1), at(1, 0))}, true}},
      {"[0@0]u[0@1] | [1@0]u[1@1]", Cover{1, {either(at(0, 0), at(1, 0)), either(at(0, 1), at(1, 1))}, true}},
      {"[0@0]u[0@2] | [1@0]", Cover{1, {either(at(0, 0), at(2, 0)), at(0, 1)}, true}},
  };
  Outcome o;
  for (const auto& [name, u] : covers) {
    double gap[2];
    const std::size_t ns[2] = {6, 12};
    for (int k = 0; k < 2; ++k) {
      const auto c = h_mu_cover(kFull, half, u, kBoxes, ns[k], 2);
      const auto m = h_mu_minus_cover(kFull, half, u, kBoxes, ns[k]);
      gap[k] = std::abs(c.estimate.values[ns[k] - 1].value - m.values[ns[k] - 1].value);
    }
    const bool ok = gap[1] <= 5e-2 && gap[1] <= gap[0];
    o.pass = o.pass && ok;
    o.detail += fmt("{%s} gap6 %.4f gap12 %.4f %s; ", name, gap[0], gap[1], ok ? "ok" : "MISS");
  }
  return o;
}

// ---------------------------------------------------------------- 5
Outcome katok() {
  const auto half = Measure::bernoulli(kBin, {0.5, 0.5});
  const double eps = 0.1, a = 1 - eps;
  const auto k = katok_entropy(kFull, half, kSymbols, kBoxes, 16, eps);
  Outcome o;
  double worst_closed = 0;
  bool weiss = true;
  for (const auto& w : k.windows) {
    const double b = std::ceil(a * std::pow(2.0, w.n) - 1e-9);
    worst_closed = std::max(worst_closed, std::abs(w.value - std::log(b) / w.n));
    const double rhs = std::log(static_cast<double>(w.b)) + (1 - a) * w.n * std::log(2.0) + std::log(2.0);
    weiss = weiss && w.h_static <= rhs + 1e-12;
  }
  const double err = std::abs(k.windows.back().value - std::log(2.0));
  o.pass = err <= 1e-2 && worst_closed <= 1e-12 && weiss && k.weiss_all;
  o.detail = fmt("value(16) %.6f, |err| %.2e, closed-form err %.1e, weiss %s", k.windows.back().value, err,
                 worst_closed, weiss ? "holds" : "FAILS");
  return o;
}

// ---------------------------------------------------------------- 6
// Independent check of the three quasi-tiling conditions.
bool verify_independently(const QuasiTiling& t, double eps, double& coverage) {
  std::set<GroupElement> target(t.target.begin(), t.target.end()), claimed_all;
  for (std::size_t i = 0; i < t.shapes.size(); ++i) {
    std::set<GroupElement> claimed;
    std::set<GroupElement> this_shape;
    for (const auto& c : t.admission_order[i]) {
      std::size_t core = 0;
      for (const auto& s : t.shapes[i]) {
        const auto g = multiply(s, c);
        if (!target.count(g)) return false;
        if (claimed_all.count(g)) return false;  // tiles of different shapes are disjoint
        if (claimed.insert(g).second) ++core;
        this_shape.insert(g);
      }
      if (!(core > (1 - eps) * t.shapes[i].size())) return false;
    }
    claimed_all.insert(this_shape.begin(), this_shape.end());
  }
  coverage = static_cast<double>(claimed_all.size()) / target.size();
  return true;
}

Outcome tiling() {
  Outcome o;
  struct Case {
    std::vector<FiniteSubset> shapes;
    FiniteSubset target;
    double eps, min_cov;
  };
  const std::vector<Case> cases{
      {{interval(0, 9), interval(0, 99)}, interval(0, 9999), 0.1, 0.9},
      {{FiniteSubset::box({0, 0}, {4, 4}), FiniteSubset::box({0, 0}, {19, 19})}, FiniteSubset::box({0, 0}, {199, 199}),
       0.2, 0.8},
  };
  for (const auto& c : cases) {
    const auto t0 = Clock::now();
    const auto t = quasi_tile(c.shapes, c.target, c.eps);
    const double secs = seconds_since(t0);
    double cov = 0;
    const bool valid = verify_independently(t, c.eps, cov);
    const bool ok = valid && cov >= c.min_cov && std::abs(cov - t.coverage) < 1e-12 && t.ok && secs < 1.0;
    o.pass = o.pass && ok;
    o.detail += fmt("d=%d coverage %.4f, verified %s, %.3fs; ", c.target.dim(), cov, valid ? "yes" : "NO", secs);
  }
  return o;
}

// ---------------------------------------------------------------- 7
Outcome inequalities() {
  oracle::Rng rng(20240701);
  std::size_t fails[4] = {0, 0, 0, 0}, mismatches = 0;
  auto random_measure = [&] {
    const double p = 0.02 + 0.96 * oracle::uniform01(rng);
    return std::vector<double>{p, 1 - p};
  };
  auto check_oracle = [&](const oracle::WordPartition& a, const std::vector<double>& p, const std::vector<int>& f,
                          double lib) {
    if (std::abs(lib - oracle::joint_entropy(a, p, f)) > 1e-12) ++mismatches;
  };
  for (int t = 0; t < 200; ++t) {  // strong subadditivity
    const auto a = oracle::random_partition(rng, 2, oracle::uniform(rng, 1, 2), 4);
    const auto p = random_measure();
    const auto mu = Measure::bernoulli(kBin, p);
    const auto e = oracle::random_subset(rng, 0, 5), f = oracle::random_subset(rng, 0, 5);
    std::set<int> u(e.begin(), e.end()), i;
    u.insert(f.begin(), f.end());
    for (int x : e)
      if (std::find(f.begin(), f.end(), x) != f.end()) i.insert(x);
    const std::vector<int> uv(u.begin(), u.end()), iv(i.begin(), i.end());
    const double hu = lib_h(mu, a.cover(), uv), hi = lib_h(mu, a.cover(), iv);
    const double he = lib_h(mu, a.cover(), e), hf = lib_h(mu, a.cover(), f);
    check_oracle(a, p, uv, hu);
    check_oracle(a, p, e, he);
    if (hu + hi > he + hf + 1e-12) ++fails[0];
  }
  for (int t = 0; t < 200; ++t) {  // tiling bound
    const auto a = oracle::random_partition(rng, 2, oracle::uniform(rng, 1, 2), 4);
    const auto p = random_measure();
    const auto mu = Measure::bernoulli(kBin, p);
    const auto b = oracle::random_subset(rng, 0, 2), f = oracle::random_subset(rng, 0, 5);
    const std::set<int> fset(f.begin(), f.end());
    double rhs = 0;
    std::size_t outside = 0;
    for (int g : f) {
      std::vector<int> bg;
      bool inside = true;
      for (int x : b) {
        bg.push_back(x + g);
        inside = inside && fset.count(g - x);
      }
      rhs += lib_h(mu, a.cover(), bg) / b.size();
      outside += !inside;
    }
    rhs += outside * std::log(static_cast<double>(a.classes));
    const double hf = lib_h(mu, a.cover(), f);
    check_oracle(a, p, f, hf);
    if (hf > rhs + 1e-12) ++fails[1];
  }
  for (int t = 0; t < 200; ++t) {  // averaging bound over rotations of an interval
    const auto a = oracle::random_partition(rng, 2, oracle::uniform(rng, 1, 2), 4);
    const auto p = random_measure();
    const auto mu = Measure::bernoulli(kBin, p);
    const int len = oracle::uniform(rng, 2, 6), m = oracle::uniform(rng, 1, len);
    std::vector<int> e;
    for (int x = 0; x < len; ++x) e.push_back(x);
    double avg = 0;
    for (int i = 0; i < len; ++i) {
      std::vector<int> ei;
      for (int j = 0; j < m; ++j) ei.push_back((i + j) % len);
      std::sort(ei.begin(), ei.end());
      avg += lib_h(mu, a.cover(), ei) / m;
    }
    if (lib_h(mu, a.cover(), e) > avg + 1e-12) ++fails[2];
  }
  for (int t = 0; t < 200; ++t) {  // affinity sandwich
    const auto beta = oracle::random_partition(rng, 2, oracle::uniform(rng, 1, 2), 4);
    const auto pn = random_measure(), pe = random_measure();
    const double a = oracle::uniform01(rng);
    const auto nu = Measure::bernoulli(kBin, pn), eta = Measure::bernoulli(kBin, pe);
    const auto f = oracle::random_subset(rng, 0, 4);
    const double mix = lib_h(convex_combine(a, nu, eta), beta.cover(), f);
    if (std::abs(mix - oracle::joint_entropy(beta, {pn, pe}, {a, 1 - a}, f)) > 1e-12) ++mismatches;
    const double d = mix - a * lib_h(nu, beta.cover(), f) - (1 - a) * lib_h(eta, beta.cover(), f);
    if (d < -1e-12 || d > oracle::phi(a) + oracle::phi(1 - a) + 1e-12) ++fails[3];
  }
  Outcome o;
  o.pass = fails[0] + fails[1] + fails[2] + fails[3] + mismatches == 0;
  o.detail = fmt("violations: subadditivity %zu/200, tiling %zu/200, averaging %zu/200, affinity %zu/200; "
                 "oracle mismatches %zu",
                 fails[0], fails[1], fails[2], fails[3], mismatches);
  return o;
}

// ---------------------------------------------------------------- 8
Outcome separated() {
  oracle::Rng rng(8675309);
  std::size_t bad = 0;
  for (int t = 0; t < 50; ++t) {
    const SFT& sft = t % 2 ? kGolden : kFull;
    const auto wc = oracle::random_cover(rng, 2, oracle::uniform(rng, 1, 2), oracle::uniform(rng, 2, 3));
    const int k = oracle::uniform(rng, 1, 3);
    std::vector<oracle::WordPartition> parts;
    std::vector<Partition> alphas;
    for (int l = 0; l < k; ++l) {
      parts.push_back(oracle::refining_partition(rng, wc));
      alphas.push_back(parts.back().cover());
    }
    const int len = oracle::uniform(rng, 1, 6);
    std::vector<int> f;
    for (int x = 0; x < len; ++x) f.push_back(x);
    const auto s = separated_set(sft, wc.cover(), alphas, ints(f));
    bool ok = s.bound_holds && s.at_most_one_per_atom;
    ok = ok && static_cast<double>(s.points.size()) * k >= static_cast<double>(s.n_cover) - 1e-9;
    for (const auto& a : parts) {
      std::set<std::vector<int>> names;
      for (const auto& x : s.points) ok = ok && names.insert(oracle::name(a, x, f)).second;
    }
    for (const auto& x : s.points) ok = ok && sft.locally_admissible(x);
    bad += !ok;
  }
  Outcome o;
  o.pass = bad == 0;
  o.detail = fmt("%zu/50 instances violate #B_F >= N(U_F)/K or separation", bad);
  return o;
}

// ---------------------------------------------------------------- 9
std::vector<TupleCandidate> all_pairs(const SFT& sft, int r) {
  const auto l = language(sft, cube(1, r));
  std::vector<TupleCandidate> out;
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t j = i + 1; j < l.size(); ++j) out.push_back(TupleCandidate{{l.pattern(i), l.pattern(j)}, r});
  return out;
}

Outcome dichotomy() {
  const auto t0 = Clock::now();
  const auto half = Measure::bernoulli(kBin, {0.5, 0.5});
  std::size_t full_pairs = 0, full_bad = 0, per_pairs = 0, per_bad = 0, disagreements = 0;
  for (int r = 0; r <= 2; ++r)
    for (const auto& c : all_pairs(kFull, r)) {
      ++full_pairs;
      const auto v = is_entropy_tuple(kFull, c, r, 6);
      const auto m = measure_tuple_check(kFull, half, admissible_cover(kFull, c).cover, kBoxes, 4);
      if (v.verdict != Verdict::positive || !(m.lambda_mass > 0)) ++full_bad;
      if (!m.agree) ++disagreements;
    }
  const auto p2 = period2();
  const std::vector<Symbol> w{0, 1};
  const auto orbit = Measure::periodic(kBin, w);
  for (int r = 0; r <= 2; ++r)
    for (const auto& c : all_pairs(p2, r)) {
      ++per_pairs;
      const auto v = is_entropy_tuple(p2, c, r, 6);
      const auto m = measure_tuple_check(p2, orbit, admissible_cover(p2, c).cover, kBoxes, 6);
      if (v.verdict != Verdict::negative || m.lambda_mass != 0.0) ++per_bad;
      if (!m.agree) ++disagreements;
    }
  Outcome o;
  o.pass = full_bad + per_bad + disagreements == 0;
  o.detail = fmt("full shift %zu pairs (%zu off), period-2 %zu pairs (%zu off), %zu disagreements, %.1fs", full_pairs,
                 full_bad, per_pairs, per_bad, disagreements, seconds_since(t0));
  return o;
}

// ---------------------------------------------------------------- 10
Outcome product_formula() {
  Outcome o;
  const std::vector<std::pair<SFT, std::size_t>> second{{kFull, 4}, {period2(), 6}};
  for (const auto& [b, n_max] : second) {
    const auto prod = SFT::product(kFull, b);
    auto cands = all_pairs(prod, 0);
    const auto r1 = all_pairs(prod, 1);
    for (std::size_t i = 0; i < r1.size() && cands.size() < 30; i += 7) cands.push_back(r1[i]);
    const auto rep = product_tuple_check(kFull, b, cands, n_max);
    const bool ok = rep.decided >= 20 && rep.disagreements == 0;
    o.pass = o.pass && ok;
    o.detail += fmt("full x %s: %zu candidates, %zu decided, %zu disagreements; ",
                    &b == &second[0].first ? "full" : "period-2", cands.size(), rep.decided, rep.disagreements);
  }
  return o;
}

// ---------------------------------------------------------------- 11
Outcome folner_independence() {
  const auto box = h_top(kGolden, kSymbols, kBoxes, 18);
  const auto sq = h_top(kGolden, kSymbols, FolnerSequence::shifted({0, 0, 1}), 18);
  std::size_t unequal = 0;
  for (std::size_t i = 0; i < 18; ++i) unequal += box.values[i].value != sq.values[i].value;
  Outcome o;
  o.pass = unequal == 0 && box.values.size() == 18;
  o.detail = fmt("%zu/18 windows differ; value(18) %.12f", unequal, box.values.back().value);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"golden-mean topological entropy", golden_top},
      {"Bernoulli exactness", bernoulli_exact},
      {"local variational principle", variational},
      {"h_mu = h_mu^- at refinement depth 2", minus_equivalence},
      {"Katok statistic", katok},
      {"quasi-tiling postconditions", tiling},
      {"entropy inequality suites", inequalities},
      {"separated-set bound", separated},
      {"entropy-pair dichotomy", dichotomy},
      {"product formula", product_formula},
      {"Folner independence", folner_independence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto o = criteria[i].second();
    std::printf("criterion %2zu %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
