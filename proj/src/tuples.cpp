#include "locent/tuples.hpp"

#include <algorithm>
#include <stdexcept>

namespace locent {

namespace {

void check_candidate(const SFT& sft, const TupleCandidate& c) {
  if (c.points.size() < 2) throw std::invalid_argument("tuple candidate needs at least two points");
  if (c.r < 0) throw std::invalid_argument("tuple candidate: r must be >= 0");
  const FiniteSubset w = cube(sft.dim(), c.r);
  const auto lang = language(sft, w);
  for (const auto& p : c.points) {
    if (!(p.shape == w)) throw std::invalid_argument("tuple candidate: point pattern is not on the radius-r cube");
    if (!lang.find(p.symbols)) throw std::invalid_argument("tuple candidate: point outside the SFT language");
  }
  if (std::all_of(c.points.begin(), c.points.end(), [&](const Pattern& p) { return p == c.points[0]; }))
    throw std::invalid_argument("tuple candidate lies on the diagonal");
}

TupleCandidate project(const TupleCandidate& c, const std::vector<Symbol>& proj) {
  TupleCandidate out{{}, c.r};
  for (const auto& p : c.points) {
    std::vector<Symbol> s;
    for (auto x : p.symbols) s.push_back(proj[x]);
    out.points.emplace_back(p.shape, std::move(s));
  }
  return out;
}

bool on_diagonal(const TupleCandidate& c) {
  return std::all_of(c.points.begin(), c.points.end(), [&](const Pattern& p) { return p == c.points[0]; });
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::positive: return "POSITIVE";
    case Verdict::negative: return "NEGATIVE";
    case Verdict::undecided: return "UNDECIDED";
  }
  return "?";
}

const char* to_string(UpeReport::Status s) {
  switch (s) {
    case UpeReport::Status::evidence: return "UPE_EVIDENCE";
    case UpeReport::Status::refuted: return "REFUTED";
    case UpeReport::Status::undecided: return "UNDECIDED";
  }
  return "?";
}

const char* to_string(LambdaVariant v) { return v == LambdaVariant::product ? "product" : "diagonal"; }

AdmissibleCover admissible_cover(const SFT& sft, const TupleCandidate& c) {
  check_candidate(sft, c);
  AdmissibleCover out;
  out.cover.dim = sft.dim();
  std::vector<Pattern> distinct;
  for (const auto& p : c.points) {
    auto it = std::find(distinct.begin(), distinct.end(), p);
    if (it != distinct.end()) {
      out.element_of_point.push_back(static_cast<std::size_t>(it - distinct.begin()));
      continue;
    }
    out.element_of_point.push_back(distinct.size());
    distinct.push_back(p);
    SymbolicSet s{sft.dim(), {}};
    for (std::size_t i = 0; i < p.shape.size(); ++i)
      for (std::size_t a = 0; a < sft.alphabet().size(); ++a)
        if (a != p.symbols[i])
          s.cylinders.push_back(Pattern(FiniteSubset::singleton(p.shape[i]), {static_cast<Symbol>(a)}));
    out.cover.elements.push_back(std::move(s));
  }
  return out;
}

TupleCandidate extend_candidate(const SFT& sft, const TupleCandidate& c) {
  check_candidate(sft, c);
  const FiniteSubset inner = cube(sft.dim(), c.r);
  const FiniteSubset outer = cube(sft.dim(), c.r + 1);
  const auto lang = language(sft, outer);
  const auto cols = lang.columns(inner);
  TupleCandidate out{{}, c.r + 1};
  for (const auto& p : c.points) {
    bool found = false;
    for (std::size_t i = 0; i < lang.size() && !found; ++i) {
      auto w = lang.word(i);
      bool match = true;
      for (std::size_t j = 0; j < cols.size() && match; ++j) match = w[cols[j]] == p.symbols[j];
      if (match) {
        out.points.push_back(lang.pattern(i));
        found = true;
      }
    }
    if (!found) throw std::invalid_argument("tuple candidate: point does not extend");
  }
  return out;
}

TupleReport is_entropy_tuple(const SFT& sft, const TupleCandidate& c, int r_max, std::size_t n_max, double tol,
                             const EntropyOptions& opts) {
  check_candidate(sft, c);
  if (c.r > r_max) throw std::invalid_argument("is_entropy_tuple: r exceeds r_max");
  TupleReport rep;
  bool all_positive = true, any_negative = false;
  TupleCandidate cur = c;
  const auto seq = FolnerSequence::boxes(sft.dim());
  for (int r = c.r; r <= r_max; ++r) {
    if (r > c.r) cur = extend_candidate(sft, cur);
    const auto ac = admissible_cover(sft, cur);
    const auto e = h_top(sft, ac.cover, seq, n_max, opts);
    ResolutionVerdict v;
    v.r = r;
    v.certified_upper = e.certified_upper;
    v.last_value = e.values.back().value;
    v.bound_source = e.bound_source;
    v.searches_exact = e.searches_exact;
    if (e.certified_upper < tol && !e.approximate_language)
      v.verdict = Verdict::negative;
    else if (v.last_value > tol)
      v.verdict = Verdict::positive;
    all_positive = all_positive && v.verdict == Verdict::positive;
    any_negative = any_negative || v.verdict == Verdict::negative;
    rep.resolutions.push_back(v);
  }
  rep.verdict = any_negative ? Verdict::negative : all_positive ? Verdict::positive : Verdict::undecided;
  return rep;
}

UpeReport upe_check(const SFT& sft, int r, std::size_t n_max, double tol, const EntropyOptions& opts) {
  const auto lang = language(sft, cube(sft.dim(), r));
  UpeReport rep;
  bool undecided = false;
  for (std::size_t i = 0; i < lang.size() && !rep.witness; ++i)
    for (std::size_t j = i + 1; j < lang.size(); ++j) {
      TupleCandidate c{{lang.pattern(i), lang.pattern(j)}, r};
      const auto v = is_entropy_tuple(sft, c, r, n_max, tol, opts);
      ++rep.pairs;
      if (v.verdict == Verdict::positive) ++rep.positive;
      if (v.verdict == Verdict::undecided) undecided = true;
      if (v.verdict == Verdict::negative) {
        rep.witness = c;
        break;
      }
    }
  rep.status = rep.witness ? UpeReport::Status::refuted
               : undecided ? UpeReport::Status::undecided
                           : UpeReport::Status::evidence;
  return rep;
}

LambdaN lambda_n(const Measure& mu, std::size_t n) {
  if (n < 2) throw std::invalid_argument("lambda_n: n must be >= 2");
  switch (mu.kind()) {
    case MeasureKind::bernoulli:
      return {LambdaVariant::product, mu, n};
    case MeasureKind::markov:
      if (mu.ergodic()) return {LambdaVariant::product, mu, n};
      throw std::invalid_argument("lambda_n: Markov measure without a primitive transition matrix");
    case MeasureKind::periodic:
      return {LambdaVariant::diagonal, mu, n};
    default:
      throw std::invalid_argument(std::string("lambda_n: unsupported measure class ") + to_string(mu.kind()));
  }
}

double LambdaN::mass(const std::vector<SymbolicSet>& sets) const {
  if (sets.size() != n) throw std::invalid_argument("lambda_n mass: expected " + std::to_string(n) + " sets");
  auto mass_of = [&](const SymbolicSet& s) {
    if (s.cylinders.empty()) return 0.0;
    const FiniteSubset w = s.support();
    if (w.empty()) return 1.0;
    return set_mass(base, s, w);
  };
  if (variant == LambdaVariant::product) {
    double m = 1.0;
    for (const auto& s : sets) m *= mass_of(s);
    return m;
  }
  SymbolicSet acc = sets[0];
  for (std::size_t i = 1; i < sets.size(); ++i) acc = intersect(acc, sets[i]);
  return mass_of(acc);
}

MeasureTupleReport measure_tuple_check(const SFT& sft, const Measure& mu, const Cover& u, const FolnerSequence& seq,
                                       std::size_t n_max, double tol, int refinement_depth,
                                       const EntropyOptions& opts) {
  if (u.size() < 2) throw std::invalid_argument("measure_tuple_check: cover needs at least two elements");
  const auto lam = lambda_n(mu, u.size());
  MeasureTupleReport rep;
  const FiniteSubset w = u.support();
  std::vector<SymbolicSet> comps;
  for (const auto& e : u.elements) {
    auto c = complement(sft, e, w);
    if (c.cylinders.empty()) rep.degenerate = true;
    comps.push_back(std::move(c));
  }
  rep.lambda_mass = lam.mass(comps);
  rep.lambda_positive = rep.lambda_mass > 0.0;
  rep.h_minus = h_mu_minus_cover(sft, mu, u, seq, n_max, opts);
  const auto cover = h_mu_cover(sft, mu, u, seq, n_max, refinement_depth, opts);
  rep.certified_upper = std::min(rep.h_minus.certified_upper, cover.estimate.certified_upper);
  if (rep.certified_upper < tol && !rep.h_minus.approximate_language)
    rep.entropy = Verdict::negative;
  else if (rep.h_minus.values.back().value > tol)
    rep.entropy = Verdict::positive;
  if (!rep.degenerate && rep.entropy != Verdict::undecided)
    rep.agree = rep.lambda_positive == (rep.entropy == Verdict::positive);
  return rep;
}

ProductReport product_tuple_check(const SFT& sft1, const SFT& sft2, const std::vector<TupleCandidate>& candidates,
                                  std::size_t n_max, double tol, const EntropyOptions& opts) {
  const SFT prod = SFT::product(sft1, sft2);
  ProductReport rep;
  for (const auto& c : candidates) {
    ProductCase pc;
    pc.candidate = c;
    const auto a = project(c, prod.projections()[0]);
    const auto b = project(c, prod.projections()[1]);
    pc.first_diagonal = on_diagonal(a);
    pc.second_diagonal = on_diagonal(b);
    if (!pc.first_diagonal) pc.first = is_entropy_tuple(sft1, a, c.r, n_max, tol, opts).verdict;
    if (!pc.second_diagonal) pc.second = is_entropy_tuple(sft2, b, c.r, n_max, tol, opts).verdict;
    const bool e1 = pc.first == Verdict::positive, e2 = pc.second == Verdict::positive;
    const bool d1 = pc.first_diagonal && sft1.fully_supported(), d2 = pc.second_diagonal && sft2.fully_supported();
    const bool u1 = !pc.first_diagonal && pc.first == Verdict::undecided;
    const bool u2 = !pc.second_diagonal && pc.second == Verdict::undecided;
    if ((e1 && (e2 || d2)) || ((e1 || d1) && e2))
      pc.predicted = Verdict::positive;
    else if (!u1 && !u2)
      pc.predicted = Verdict::negative;
    pc.observed = is_entropy_tuple(prod, c, c.r, n_max, tol, opts).verdict;
    if (pc.predicted != Verdict::undecided && pc.observed != Verdict::undecided) {
      ++rep.decided;
      if (pc.predicted == pc.observed)
        ++rep.agreements;
      else
        ++rep.disagreements;
    }
    rep.cases.push_back(std::move(pc));
  }
  return rep;
}

PairSeparation pair_cover_separation(const SFT& sft, const SymbolicSet& u1, const SymbolicSet& u2,
                                     const std::vector<GroupElement>& g, std::size_t node_budget) {
  if (g.empty()) throw std::invalid_argument("pair_cover_separation: empty element sequence");
  const FiniteSubset w = set_union(u1.support(), u2.support());
  Cover v{sft.dim(), {complement(sft, u1, w), complement(sft, u2, w)}, true};
  const FiniteSubset f(sft.dim(), g);
  if (f.size() != g.size()) throw std::invalid_argument("pair_cover_separation: elements must be distinct");
  PairSeparation out;
  if (w.empty()) {
    out.count = 1;
  } else {
    if (!is_cover(sft, v, w)) throw std::invalid_argument("pair_cover_separation: {U_1^c, U_2^c} is not a cover");
    out.count = pullback_subcover(sft, v, f, node_budget).size;
  }
  out.bound_exceeded = out.count > g.size() + 1;
  if (!out.bound_exceeded) return out;
  for (std::size_t j1 = 0; j1 < g.size() && !out.witness; ++j1)
    for (std::size_t j2 = j1 + 1; j2 < g.size(); ++j2) {
      // g_{j1} g_{j2}^{-1} U_2 = translate(U_2, g_{j2} - g_{j1})
      if (is_nonempty(sft, intersect(u1, translate(u2, g[j2] - g[j1])))) {
        out.witness = std::make_pair(j1, j2);
        break;
      }
    }
  return out;
}

}  // namespace locent
