#include "locent/entropy.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "locent/parallel.hpp"
#include "locent/spectral.hpp"

namespace locent {

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kInf = std::numeric_limits<double>::infinity();

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string describe(const Pattern& p, const Alphabet& a) {
  std::string s = "{";
  for (std::size_t i = 0; i < p.shape.size(); ++i) {
    if (i) s += ", ";
    s += to_string(p.shape[i]) + ":" + a.name(p.symbols[i]);
  }
  return s + "}";
}

std::vector<double> carried_masses(const Measure& mu, const WindowLanguage& lang) {
  auto m = word_masses(mu, lang);
  const double total = std::accumulate(m.begin(), m.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("measure is not carried by the SFT language on the window (total mass " +
                                std::to_string(total) + ")");
  return m;
}

std::vector<std::vector<std::uint32_t>> item_holders(const WindowFamily& f) {
  std::vector<std::vector<std::uint32_t>> h(f.universe);
  for (std::size_t j = 0; j < f.sets.size(); ++j)
    for (auto x : f.sets[j]) h[x].push_back(static_cast<std::uint32_t>(j));
  return h;
}

void ensure_cover(const WindowFamily& f, const WindowLanguage& lang, const Alphabet& alphabet) {
  std::vector<char> hit(f.universe, 0);
  for (const auto& s : f.sets)
    for (auto x : s) hit[x] = 1;
  for (std::size_t i = 0; i < hit.size(); ++i)
    if (!hit[i]) {
      std::string w = lang.width() == 0 ? "{}" : describe(lang.pattern(i), alphabet);
      throw NotACoverError("not a cover on the window; uncovered pattern " + w);
    }
}

// Intersections of members of a and b, using the items' holders in b.
WindowFamily refine_fast(const WindowFamily& a, const WindowFamily& b, bool maximal) {
  const auto hb = item_holders(b);
  WindowFamily r{a.universe, {}};
  std::vector<ItemSet> buckets(b.sets.size());
  std::vector<std::uint32_t> touched;
  for (const auto& x : a.sets) {
    for (auto it : x)
      for (auto j : hb[it]) {
        if (buckets[j].empty()) touched.push_back(j);
        buckets[j].push_back(it);
      }
    for (auto j : touched) {
      r.sets.push_back(std::move(buckets[j]));
      buckets[j].clear();
    }
    touched.clear();
  }
  if (maximal) {
    keep_maximal(r.sets);
  } else {
    std::sort(r.sets.begin(), r.sets.end());
    r.sets.erase(std::unique(r.sets.begin(), r.sets.end()), r.sets.end());
  }
  return r;
}

// Per item label of a partition family; throws when the family is not a partition.
std::vector<std::uint32_t> partition_labels(const WindowFamily& f, const char* what) {
  std::vector<std::uint32_t> label(f.universe, std::numeric_limits<std::uint32_t>::max());
  for (std::size_t j = 0; j < f.sets.size(); ++j)
    for (auto x : f.sets[j]) {
      if (label[x] != std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument(std::string(what) + ": elements overlap on the window");
      label[x] = static_cast<std::uint32_t>(j);
    }
  for (auto l : label)
    if (l == std::numeric_limits<std::uint32_t>::max())
      throw std::invalid_argument(std::string(what) + ": elements do not cover the window");
  return label;
}

// Combines two labelings into the labeling of their join.
void join_labels(std::vector<std::uint32_t>& acc, const std::vector<std::uint32_t>& other) {
  std::unordered_map<std::uint64_t, std::uint32_t> ids;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    const std::uint64_t key = (static_cast<std::uint64_t>(acc[i]) << 32) | other[i];
    auto [it, fresh] = ids.emplace(key, static_cast<std::uint32_t>(ids.size()));
    acc[i] = it->second;
  }
}

EntropyEstimate finish(std::vector<WindowValue> values) {
  EntropyEstimate e;
  e.values = std::move(values);
  e.running_infimum = kInf;
  for (const auto& v : e.values) {
    e.running_infimum = std::min(e.running_infimum, v.value);
    e.searches_exact = e.searches_exact && v.exact;
  }
  if (e.values.empty()) e.running_infimum = 0.0;
  e.certified_upper = e.running_infimum;
  e.extrapolated = e.values.empty() ? 0.0 : e.values.back().value;
  return e;
}

void apply_bound(EntropyEstimate& e, double bound, const std::string& source) {
  if (bound < e.certified_upper) {
    e.certified_upper = std::max(0.0, bound);
    e.bound_source = source;
  }
}

bool interval_sequence(const FolnerSequence& seq) {
  return seq.dim == 1 && (seq.kind == FolnerKind::box || seq.kind == FolnerKind::shifted_interval);
}

// d = 1 interval sequences: H(alpha | alpha_{[1,n-1]}) = H_n - H_{n-1}
// decreases to h_mu(G, alpha) for invariant mu.
double increment_bound(const std::vector<WindowValue>& v) {
  double best = kInf;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].n != i + 1) return best;
    best = std::min(best, v[i].raw - (i == 0 ? 0.0 : v[i - 1].raw));
  }
  return best;
}

bool is_partition_on(const SFT& sft, const Cover& u, const WindowLanguage& lang) {
  (void)sft;
  return is_partition(restrict_cover(u, lang));
}

std::optional<double> closed_form_partition(const Measure& mu, const Partition& alpha) {
  switch (mu.kind()) {
    case MeasureKind::bernoulli:
    case MeasureKind::markov:
      if (is_symbol_partition(alpha, mu.alphabet())) return mu.entropy_rate();
      return std::nullopt;
    case MeasureKind::periodic:
      return 0.0;
    case MeasureKind::convex: {
      double h = 0;
      for (std::size_t i = 0; i < mu.components().size(); ++i) {
        if (mu.weights()[i] == 0) continue;
        auto c = closed_form_partition(mu.components()[i], alpha);
        if (!c) return std::nullopt;
        h += mu.weights()[i] * *c;
      }
      return h;
    }
    case MeasureKind::empirical:
      return std::nullopt;
  }
  return std::nullopt;
}

// ------------------------------------------------------------ partition profiles

// Partitions given by a labeling of the words of a base window; evaluates
// H_mu(alpha_{F_n}) on the windows base + F_n.
class PartitionProfile {
 public:
  PartitionProfile(const SFT& sft, const Measure& mu, FiniteSubset base, const FolnerSequence& seq)
      : sft_(sft), mu_(mu), base_(std::move(base)), seq_(seq), base_lang_(language(sft, base_)) {}

  const WindowLanguage& base_language() const { return base_lang_; }
  const FiniteSubset& base() const { return base_; }

  struct Cache {
    std::size_t n = 0;
    std::size_t size = 0;
    std::vector<double> mass;
    std::vector<std::vector<std::uint32_t>> proj;  // per g in F_n: base word index per item
    bool exact_language = true;
  };

  const Cache& cache(std::size_t n) {
    auto it = caches_.find(n);
    if (it != caches_.end()) return it->second;
    Cache c;
    c.n = n;
    const FiniteSubset f = folner(seq_, n);
    c.size = f.size();
    const FiniteSubset w = base_.empty() ? FiniteSubset(f.dim()) : set_product(base_, f);
    const auto lang = language(sft_, w);
    c.exact_language = lang.exact();
    c.mass = carried_masses(mu_, lang);
    for (const auto& g : f) {
      std::vector<std::uint32_t> p(lang.size(), 0);
      if (!base_.empty()) {
        const auto cols = lang.columns(base_.translated(g));
        std::vector<Symbol> buf(cols.size());
        for (std::size_t i = 0; i < lang.size(); ++i) {
          auto word = lang.word(i);
          for (std::size_t j = 0; j < cols.size(); ++j) buf[j] = word[cols[j]];
          auto k = base_lang_.find(buf);
          if (!k) throw std::logic_error("partition profile: restricted word outside the base language");
          p[i] = static_cast<std::uint32_t>(*k);
        }
      }
      c.proj.push_back(std::move(p));
    }
    return caches_.emplace(n, std::move(c)).first->second;
  }

  // H_mu(alpha_{F_n}) for the labeling of base words.
  double entropy(std::size_t n, const std::vector<std::uint32_t>& base_label) {
    const Cache& c = cache(n);
    const std::size_t items = c.mass.size();
    std::vector<std::uint32_t> acc(items, 0), cur(items);
    for (const auto& p : c.proj) {
      for (std::size_t i = 0; i < items; ++i) cur[i] = base_label[p[i]];
      join_labels(acc, cur);
    }
    return label_entropy(acc, c.mass);
  }

  EntropyEstimate estimate(const std::vector<std::uint32_t>& base_label, std::size_t n_max) {
    std::vector<WindowValue> values;
    bool exact_lang = true;
    for (std::size_t n = 1; n <= n_max; ++n) {
      const auto t0 = Clock::now();
      WindowValue v;
      v.n = n;
      v.raw = entropy(n, base_label);
      const Cache& c = cache(n);
      exact_lang = exact_lang && c.exact_language;
      v.size = c.size;
      v.value = v.size ? v.raw / static_cast<double>(v.size) : 0.0;
      v.seconds = seconds_since(t0);
      values.push_back(v);
    }
    auto e = finish(std::move(values));
    e.approximate_language = !exact_lang;
    return e;
  }

 private:
  const SFT& sft_;
  const Measure& mu_;
  FiniteSubset base_;
  const FolnerSequence& seq_;
  WindowLanguage base_lang_;
  std::map<std::size_t, Cache> caches_;
};

void apply_measure_bounds(EntropyEstimate& e, const Measure& mu, const FolnerSequence& seq, const Partition& alpha,
                          const EntropyOptions& opts) {
  if (!mu.invariant()) return;
  if (auto cf = closed_form_partition(mu, alpha)) {
    e.exact = true;
    e.certified_upper = std::max(0.0, *cf);
    e.extrapolated = e.certified_upper;
    e.bound_source = "closed_form";
    return;
  }
  if (!opts.structural_bounds) return;
  if (interval_sequence(seq)) apply_bound(e, increment_bound(e.values), "conditional_increment");
  if (auto rate = mu.entropy_rate()) apply_bound(e, *rate, "measure_entropy_rate");
}

std::vector<std::vector<std::size_t>> permutations(std::size_t m, std::size_t limit) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> p(m);
  std::iota(p.begin(), p.end(), 0);
  do {
    out.push_back(p);
    if (out.size() >= limit) break;
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Atoms of a family over the base language, grouped by holder signature.
struct AtomTable {
  std::vector<std::uint32_t> atom_of;                // per word
  std::vector<std::vector<std::uint32_t>> holders;  // per atom: elements of U containing it
  std::vector<std::vector<std::uint32_t>> words;    // per atom
};

AtomTable atoms_by_signature(const std::vector<std::vector<std::uint32_t>>& signature,
                             const std::vector<std::vector<std::uint32_t>>& holders_of_word) {
  AtomTable t;
  std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
  t.atom_of.resize(signature.size());
  for (std::size_t i = 0; i < signature.size(); ++i) {
    auto [it, fresh] = ids.emplace(signature[i], static_cast<std::uint32_t>(t.holders.size()));
    if (fresh) {
      t.holders.push_back(holders_of_word[i]);
      t.words.emplace_back();
    }
    t.atom_of[i] = it->second;
    t.words[it->second].push_back(static_cast<std::uint32_t>(i));
  }
  return t;
}

// Candidate assignments of atoms to holders: priority orders, then
// exhaustive enumeration when small.
std::vector<std::vector<std::uint32_t>> assignment_candidates(const AtomTable& t, std::size_t m,
                                                              std::size_t budget) {
  std::set<std::vector<std::uint32_t>> out;
  for (const auto& order : permutations(m, 720)) {
    std::vector<std::size_t> rank(m);
    for (std::size_t i = 0; i < m; ++i) rank[order[i]] = i;
    std::vector<std::uint32_t> a(t.holders.size());
    for (std::size_t k = 0; k < t.holders.size(); ++k)
      a[k] = *std::min_element(t.holders[k].begin(), t.holders[k].end(),
                               [&](auto x, auto y) { return rank[x] < rank[y]; });
    out.insert(std::move(a));
  }
  double count = 1;
  for (const auto& h : t.holders) count *= static_cast<double>(h.size());
  if (count <= static_cast<double>(budget)) {
    std::vector<std::size_t> idx(t.holders.size(), 0);
    for (;;) {
      std::vector<std::uint32_t> a(t.holders.size());
      for (std::size_t k = 0; k < a.size(); ++k) a[k] = t.holders[k][idx[k]];
      out.insert(std::move(a));
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == t.holders[k].size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }
  return {out.begin(), out.end()};
}

Partition partition_from_labels(const WindowLanguage& lang, const std::vector<std::uint32_t>& word_label,
                                std::size_t cells, int dim) {
  Partition p{dim, std::vector<SymbolicSet>(cells, SymbolicSet{dim, {}}), false};
  for (std::size_t i = 0; i < lang.size(); ++i)
    p.elements[word_label[i]].cylinders.push_back(lang.width() ? lang.pattern(i) : Pattern::empty(dim));
  std::erase_if(p.elements, [](const SymbolicSet& s) { return s.cylinders.empty(); });
  return p;
}

}  // namespace

// ================================================================ basics

double phi(double t) { return t > 0.0 ? -t * std::log(t) : 0.0; }

double label_entropy(std::span<const std::uint32_t> labels, std::span<const double> mass) {
  std::unordered_map<std::uint32_t, double> cell;
  for (std::size_t i = 0; i < labels.size(); ++i) cell[labels[i]] += mass[i];
  std::vector<std::pair<std::uint32_t, double>> sorted(cell.begin(), cell.end());
  std::sort(sorted.begin(), sorted.end());
  double h = 0.0;
  for (const auto& [l, m] : sorted) h += phi(m);
  return h;
}

bool is_symbol_partition(const Cover& u, const Alphabet& alphabet) {
  if (u.size() != alphabet.size() || u.size() == 0) return false;
  std::optional<GroupElement> site;
  std::vector<char> seen(alphabet.size(), 0);
  for (const auto& e : u.elements) {
    if (e.cylinders.size() != 1 || e.cylinders[0].shape.size() != 1) return false;
    const auto& g = e.cylinders[0].shape[0];
    if (site && !(*site == g)) return false;
    site = g;
    const auto s = e.cylinders[0].symbols[0];
    if (s >= seen.size() || seen[s]) return false;
    seen[s] = 1;
  }
  return true;
}

FiniteSubset pullback_window(const Cover& u, const FiniteSubset& f) {
  const FiniteSubset s = u.support();
  if (s.empty() || f.empty()) return FiniteSubset(u.dim);
  return set_product(s, f);
}

WindowFamily pullback_family(const Cover& u, const FiniteSubset& f, const WindowLanguage& lang, bool maximal_only) {
  WindowFamily acc;
  acc.universe = lang.size();
  ItemSet all(lang.size());
  std::iota(all.begin(), all.end(), 0u);
  acc.sets.push_back(std::move(all));
  for (const auto& g : f) acc = refine_fast(acc, restrict_cover(translate(u, g), lang), maximal_only);
  if (maximal_only) keep_maximal(acc.sets);
  return acc;
}

Subcover min_subcover(const SFT& sft, const Cover& u, const FiniteSubset& window, std::size_t node_budget) {
  const auto lang = language(sft, window);
  const auto fam = restrict_cover(u, lang);
  ensure_cover(fam, lang, sft.alphabet());
  const auto r = min_set_cover(fam, node_budget);
  return {r.size, r.exact, r.nodes, r.chosen};
}

Subcover pullback_subcover(const SFT& sft, const Cover& u, const FiniteSubset& f, std::size_t node_budget) {
  const auto lang = language(sft, pullback_window(u, f));
  ensure_cover(restrict_cover(u, language(sft, u.support())), language(sft, u.support()), sft.alphabet());
  const auto fam = pullback_family(u, f, lang, true);
  ensure_cover(fam, lang, sft.alphabet());
  const auto r = min_set_cover(fam, node_budget);
  return {r.size, r.exact, r.nodes, r.chosen};
}

// ================================================================ topological

double name_graph_bound(const SFT& sft, const Partition& alpha, int k) {
  if (sft.dim() != 1) throw DimensionError("name_graph_bound needs d = 1");
  if (k < 1) throw std::invalid_argument("name_graph_bound: k must be >= 1");
  const FiniteSubset base = alpha.support();
  if (base.empty()) return 0.0;
  const FiniteSubset w = set_product(base, FiniteSubset::interval(0, k));
  const auto lang = language(sft, w);
  std::vector<std::vector<std::uint32_t>> label;
  for (int j = 0; j <= k; ++j)
    label.push_back(partition_labels(restrict_cover(translate(alpha, GroupElement{j}), lang), "name_graph_bound"));
  std::map<std::vector<std::uint32_t>, std::size_t> vertex;
  std::set<std::pair<std::size_t, std::size_t>> edges;
  auto vid = [&](std::vector<std::uint32_t> name) {
    return vertex.emplace(std::move(name), vertex.size()).first->second;
  };
  for (std::size_t i = 0; i < lang.size(); ++i) {
    std::vector<std::uint32_t> head, tail;
    for (int j = 0; j < k; ++j) head.push_back(label[static_cast<std::size_t>(j)][i]);
    for (int j = 1; j <= k; ++j) tail.push_back(label[static_cast<std::size_t>(j)][i]);
    edges.emplace(vid(std::move(head)), vid(std::move(tail)));
  }
  const std::size_t n = vertex.size();
  std::vector<double> m(n * n, 0.0);
  for (auto [a, b] : edges) m[a * n + b] = 1.0;
  return std::log(std::max(1.0, spectral_radius(n, m)));
}

std::pair<double, std::string> structural_top_bound(const SFT& sft, const Cover& u, const EntropyOptions& opts) {
  if (sft.dim() != 1) return {kInf, "none"};
  double best = sft_entropy(sft);
  std::string source = "sft_entropy";
  const FiniteSubset base = u.support();
  if (base.empty() || u.size() == 0) return {best, source};
  const auto lang = language(sft, base);
  const auto fam = restrict_cover(u, lang);
  ensure_cover(fam, lang, sft.alphabet());
  const auto hw = item_holders(fam);
  if (std::any_of(fam.sets.begin(), fam.sets.end(), [&](const ItemSet& s) { return s.size() == lang.size(); }))
    return {0.0, "trivial_element"};

  std::vector<std::vector<std::uint32_t>> cands;
  if (is_partition(fam)) {
    std::vector<std::uint32_t> l(lang.size());
    for (std::size_t i = 0; i < lang.size(); ++i) l[i] = hw[i][0];
    cands.push_back(std::move(l));
  } else {
    const AtomTable t = atoms_by_signature(hw, hw);
    for (const auto& a : assignment_candidates(t, u.size(), opts.candidate_budget)) {
      std::vector<std::uint32_t> l(lang.size());
      for (std::size_t i = 0; i < lang.size(); ++i) l[i] = a[t.atom_of[i]];
      cands.push_back(std::move(l));
    }
    // partitions read off one factor of a product system
    for (const auto& proj : sft.projections()) {
      std::map<std::vector<Symbol>, std::vector<std::uint32_t>> groups;
      for (std::size_t i = 0; i < lang.size(); ++i) {
        auto w = lang.word(i);
        std::vector<Symbol> key;
        for (auto s : w) key.push_back(proj[s]);
        groups[key].push_back(static_cast<std::uint32_t>(i));
      }
      std::vector<std::vector<std::uint32_t>> common;
      bool feasible = true;
      for (const auto& [key, items] : groups) {
        std::vector<std::uint32_t> c = hw[items[0]];
        for (auto i : items) {
          std::vector<std::uint32_t> nc;
          std::set_intersection(c.begin(), c.end(), hw[i].begin(), hw[i].end(), std::back_inserter(nc));
          c = std::move(nc);
        }
        if (c.empty()) { feasible = false; break; }
        common.push_back(std::move(c));
      }
      if (!feasible) continue;
      double count = 1;
      for (const auto& c : common) count *= static_cast<double>(c.size());
      std::vector<std::size_t> idx(common.size(), 0);
      for (;;) {
        std::vector<std::uint32_t> l(lang.size());
        std::size_t g = 0;
        for (const auto& [key, items] : groups) {
          for (auto i : items) l[i] = common[g][idx[g]];
          ++g;
        }
        cands.push_back(std::move(l));
        if (count > static_cast<double>(opts.candidate_budget)) break;
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == common[k].size()) idx[k++] = 0;
        if (k == idx.size()) break;
      }
    }
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

  for (int k = 1; k <= opts.name_block_max; ++k) {
    const FiniteSubset w = set_product(base, FiniteSubset::interval(0, k));
    const auto wl = language(sft, w);
    // base-window word of each shifted restriction
    std::vector<std::vector<std::uint32_t>> sub;
    for (int j = 0; j <= k; ++j) {
      const auto cols = wl.columns(base.translated(GroupElement{j}));
      std::vector<std::uint32_t> s(wl.size());
      std::vector<Symbol> buf(cols.size());
      for (std::size_t i = 0; i < wl.size(); ++i) {
        auto word = wl.word(i);
        for (std::size_t c = 0; c < cols.size(); ++c) buf[c] = word[cols[c]];
        s[i] = static_cast<std::uint32_t>(*lang.find(buf));
      }
      sub.push_back(std::move(s));
    }
    for (const auto& l : cands) {
      std::map<std::vector<std::uint32_t>, std::size_t> vertex;
      std::set<std::pair<std::size_t, std::size_t>> edges;
      for (std::size_t i = 0; i < wl.size(); ++i) {
        std::vector<std::uint32_t> head, tail;
        for (int j = 0; j < k; ++j) head.push_back(l[sub[static_cast<std::size_t>(j)][i]]);
        for (int j = 1; j <= k; ++j) tail.push_back(l[sub[static_cast<std::size_t>(j)][i]]);
        auto a = vertex.emplace(std::move(head), vertex.size()).first->second;
        auto b = vertex.emplace(std::move(tail), vertex.size()).first->second;
        edges.emplace(a, b);
      }
      const std::size_t n = vertex.size();
      std::vector<double> m(n * n, 0.0);
      for (auto [a, b] : edges) m[a * n + b] = 1.0;
      const double v = std::log(std::max(1.0, spectral_radius(n, m)));
      if (v < best - 1e-12) {
        best = v;
        source = "name_graph(k=" + std::to_string(k) + ")";
      }
    }
    if (best <= 0.0) break;
  }
  return {std::max(0.0, best), source};
}

EntropyEstimate h_top(const SFT& sft, const Cover& u, const FolnerSequence& seq, std::size_t n_max,
                      const EntropyOptions& opts) {
  if (n_max < 1) throw std::invalid_argument("h_top: n_max must be >= 1");
  if (u.dim != sft.dim()) throw DimensionError("h_top: cover dimension mismatch");
  {
    const auto base = language(sft, u.support());
    ensure_cover(restrict_cover(u, base), base, sft.alphabet());
  }
  std::vector<WindowValue> values(n_max);
  std::vector<char> approx(n_max, 0);
  parallel_for(n_max, opts.threads, [&](std::size_t i) {
    const auto t0 = Clock::now();
    const std::size_t n = i + 1;
    const FiniteSubset f = folner(seq, n);
    const auto lang = language(sft, pullback_window(u, f));
    const auto fam = pullback_family(u, f, lang, true);
    ensure_cover(fam, lang, sft.alphabet());
    const auto r = min_set_cover(fam, opts.node_budget);
    WindowValue& v = values[i];
    v.n = n;
    v.size = f.size();
    v.raw = std::log(static_cast<double>(std::max<std::size_t>(1, r.size)));
    v.value = v.size ? v.raw / static_cast<double>(v.size) : 0.0;
    v.exact = r.exact;
    v.nodes = r.nodes;
    v.seconds = seconds_since(t0);
    approx[i] = !lang.exact();
  });
  auto e = finish(std::move(values));
  e.approximate_language = std::any_of(approx.begin(), approx.end(), [](char c) { return c != 0; });
  if (opts.structural_bounds && sft.dim() == 1) {
    auto [b, src] = structural_top_bound(sft, u, opts);
    apply_bound(e, b, src);
  }
  return e;
}

// ================================================================ measure

double shannon(const Measure& mu, const Partition& alpha, const FiniteSubset& window, const SFT* support) {
  const SFT full = support ? *support : SFT::full_shift(mu.alphabet(), mu.dim());
  const auto lang = language(full, window);
  const auto mass = carried_masses(mu, lang);
  const auto label = partition_labels(restrict_cover(alpha, lang), "shannon");
  return label_entropy(label, mass);
}

double conditional(const Measure& mu, const Partition& alpha, const Partition& beta, const FiniteSubset& window,
                   const SFT* support) {
  const SFT full = support ? *support : SFT::full_shift(mu.alphabet(), mu.dim());
  const auto lang = language(full, window);
  const auto mass = carried_masses(mu, lang);
  auto la = partition_labels(restrict_cover(alpha, lang), "conditional");
  const auto lb = partition_labels(restrict_cover(beta, lang), "conditional");
  const double hb = label_entropy(lb, mass);
  join_labels(la, lb);
  return std::max(0.0, label_entropy(la, mass) - hb);
}

FamilyStaticEntropy static_entropy(const WindowFamily& family, std::span<const double> mass,
                                   std::size_t assignment_budget) {
  if (mass.size() != family.universe) throw std::invalid_argument("static_entropy: mass size mismatch");
  const std::size_t m = family.sets.size();
  const auto hw = item_holders(family);
  for (std::size_t i = 0; i < hw.size(); ++i)
    if (hw[i].empty()) throw NotACoverError("static_entropy: family does not cover item " + std::to_string(i));

  std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
  std::vector<std::uint32_t> atom_of(family.universe);
  std::vector<std::vector<std::uint32_t>> holders;
  std::vector<double> amass;
  for (std::size_t i = 0; i < hw.size(); ++i) {
    auto [it, fresh] = ids.emplace(hw[i], static_cast<std::uint32_t>(holders.size()));
    if (fresh) {
      holders.push_back(hw[i]);
      amass.push_back(0.0);
    }
    atom_of[i] = it->second;
    amass[it->second] += mass[i];
  }
  const std::size_t na = holders.size();
  std::vector<std::vector<std::uint32_t>> elem_atoms(m);
  for (std::size_t a = 0; a < na; ++a)
    for (auto v : holders[a]) elem_atoms[v].push_back(static_cast<std::uint32_t>(a));

  // unassigned mass and atom count per element
  std::vector<double> avail(m, 0.0);
  std::vector<std::size_t> live(m, 0);
  for (std::size_t a = 0; a < na; ++a)
    for (auto v : holders[a]) {
      avail[v] += amass[a];
      ++live[v];
    }
  std::vector<char> done(na, 0);
  std::vector<std::uint32_t> assign(na, 0), best_assign(na, 0);
  std::size_t work = 0;

  auto take = [&](std::size_t v, std::vector<std::uint32_t>& taken) {
    for (auto a : elem_atoms[v]) {
      if (done[a]) continue;
      done[a] = 1;
      assign[a] = static_cast<std::uint32_t>(v);
      taken.push_back(a);
      for (auto w : holders[a]) {
        avail[w] -= amass[a];
        --live[w];
      }
      work += holders[a].size();
    }
  };
  auto untake = [&](const std::vector<std::uint32_t>& taken) {
    for (auto a : taken) {
      done[a] = 0;
      for (auto w : holders[a]) {
        avail[w] += amass[a];
        ++live[w];
      }
    }
  };
  auto cell_entropy = [&](const std::vector<std::uint32_t>& as) {
    std::vector<double> cell(m, 0.0);
    for (std::size_t a = 0; a < na; ++a) cell[as[a]] += amass[a];
    double h = 0;
    for (double c : cell) h += phi(c);
    return h;
  };

  // greedy: the element with the largest unassigned mass takes all of it
  std::vector<std::vector<std::uint32_t>> trail;
  for (std::size_t left = na; left > 0;) {
    std::size_t bv = m;
    for (std::size_t v = 0; v < m; ++v)
      if (live[v] > 0 && (bv == m || avail[v] > avail[bv])) bv = v;
    trail.emplace_back();
    take(bv, trail.back());
    left -= trail.back().size();
  }
  best_assign = assign;
  double best = cell_entropy(best_assign);
  for (auto it = trail.rbegin(); it != trail.rend(); ++it) untake(*it);
  work = 0;

  // exact search over priority orders; an optimal assignment is induced by one
  bool aborted = false;
  double total = std::accumulate(amass.begin(), amass.end(), 0.0);
  std::vector<char> touched(m, 0);
  std::function<void(double, double, std::size_t, std::size_t, const std::vector<std::uint32_t>*)> dfs =
      [&](double h, double rem, std::size_t left, std::size_t prev, const std::vector<std::uint32_t>* prev_taken) {
        if (aborted) return;
        work += m + 1;
        if (work > assignment_budget) {
          aborted = true;
          return;
        }
        double mx = 0;
        std::vector<std::pair<double, std::size_t>> options;
        for (std::size_t v = 0; v < m; ++v)
          if (live[v] > 0 && avail[v] > 0) {
            options.emplace_back(avail[v], v);
            mx = std::max(mx, avail[v]);
          }
        if (left == 0 || options.empty()) {
          if (h < best - 1e-15) {
            best = h;
            best_assign = assign;
            for (std::size_t a = 0; a < na; ++a)
              if (!done[a]) best_assign[a] = holders[a][0];
          }
          return;
        }
        const double q = std::floor(rem / mx);
        const double lb = h + q * phi(mx) + phi(std::max(0.0, rem - q * mx));
        if (lb >= best - 1e-15) return;
        std::sort(options.begin(), options.end(),
                  [](auto& x, auto& y) { return x.first > y.first || (x.first == y.first && x.second < y.second); });
        // elements untouched by the previous pick commute with it; keep those in index order
        if (prev_taken)
          for (auto a : *prev_taken)
            for (auto w : holders[a]) touched[w] = 1;
        std::vector<std::size_t> skip;
        for (auto [s, v] : options)
          if (prev_taken && v < prev && !touched[v]) skip.push_back(v);
        if (prev_taken)
          for (auto a : *prev_taken)
            for (auto w : holders[a]) touched[w] = 0;
        std::sort(skip.begin(), skip.end());
        for (auto [s, v] : options) {
          if (std::binary_search(skip.begin(), skip.end(), v)) continue;
          std::vector<std::uint32_t> taken;
          take(v, taken);
          dfs(h + phi(s), rem - s, left - taken.size(), v, &taken);
          untake(taken);
          if (aborted) return;
        }
      };
  dfs(0.0, total, na, m, nullptr);

  if (aborted) {
    // first-improvement reassignment of single atoms from the incumbent
    std::vector<double> cell(m, 0.0);
    for (std::size_t a = 0; a < na; ++a) cell[best_assign[a]] += amass[a];
    std::size_t sweeps = 0, moves = 0;
    for (bool improved = true; improved && sweeps < 64 && moves < assignment_budget; ++sweeps) {
      improved = false;
      for (std::size_t a = 0; a < na; ++a) {
        if (holders[a].size() < 2 || amass[a] <= 0) continue;
        const auto cur = best_assign[a];
        double bd = -1e-15;
        std::uint32_t bw = cur;
        for (auto w : holders[a]) {
          ++moves;
          if (w == cur) continue;
          const double d = phi(cell[cur] - amass[a]) + phi(cell[w] + amass[a]) - phi(cell[cur]) - phi(cell[w]);
          if (d < bd) {
            bd = d;
            bw = w;
          }
        }
        if (bw != cur) {
          cell[cur] -= amass[a];
          cell[bw] += amass[a];
          best_assign[a] = bw;
          improved = true;
        }
      }
    }
    best = cell_entropy(best_assign);
  }

  FamilyStaticEntropy r;
  r.value = best;
  r.exact = !aborted;
  r.choice.resize(family.universe);
  for (std::size_t i = 0; i < family.universe; ++i) r.choice[i] = best_assign[atom_of[i]];
  return r;
}

StaticCoverEntropy static_cover_entropy(const Measure& mu, const Cover& u, const FiniteSubset& window,
                                        const SFT* support, const EntropyOptions& opts) {
  const SFT full = support ? *support : SFT::full_shift(mu.alphabet(), mu.dim());
  const auto lang = language(full, window);
  const auto mass = carried_masses(mu, lang);
  const auto fam = restrict_cover(u, lang);
  ensure_cover(fam, lang, full.alphabet());
  const auto s = static_entropy(fam, mass, opts.assignment_budget);
  StaticCoverEntropy r;
  r.value = s.value;
  r.exact = s.exact;
  r.assignment = s.choice;
  std::vector<std::uint32_t> label(s.choice.begin(), s.choice.end());
  r.minimizer = partition_from_labels(lang, label, u.size(), u.dim);
  return r;
}

EntropyEstimate h_mu_partition(const SFT& sft, const Measure& mu, const Partition& alpha, const FolnerSequence& seq,
                               std::size_t n_max, const EntropyOptions& opts) {
  if (n_max < 1) throw std::invalid_argument("h_mu_partition: n_max must be >= 1");
  PartitionProfile prof(sft, mu, alpha.support(), seq);
  const auto& bl = prof.base_language();
  const auto label = partition_labels(restrict_cover(alpha, bl), "h_mu_partition");
  auto e = prof.estimate(label, n_max);
  apply_measure_bounds(e, mu, seq, alpha, opts);
  return e;
}

EntropyEstimate h_mu_minus_cover(const SFT& sft, const Measure& mu, const Cover& u, const FolnerSequence& seq,
                                 std::size_t n_max, const EntropyOptions& opts) {
  if (n_max < 1) throw std::invalid_argument("h_mu_minus_cover: n_max must be >= 1");
  std::vector<WindowValue> values(n_max);
  std::vector<char> approx(n_max, 0);
  parallel_for(n_max, opts.threads, [&](std::size_t i) {
    const auto t0 = Clock::now();
    const std::size_t n = i + 1;
    const FiniteSubset f = folner(seq, n);
    const auto lang = language(sft, pullback_window(u, f));
    const auto mass = carried_masses(mu, lang);
    const auto fam = pullback_family(u, f, lang, true);
    ensure_cover(fam, lang, sft.alphabet());
    const auto s = static_entropy(fam, mass, opts.assignment_budget);
    WindowValue& v = values[i];
    v.n = n;
    v.size = f.size();
    v.raw = s.value;
    v.value = v.size ? v.raw / static_cast<double>(v.size) : 0.0;
    v.exact = s.exact;
    v.seconds = seconds_since(t0);
    approx[i] = !lang.exact();
  });
  auto e = finish(std::move(values));
  e.approximate_language = std::any_of(approx.begin(), approx.end(), [](char c) { return c != 0; });
  return e;
}

CoverEntropyEstimate h_mu_cover(const SFT& sft, const Measure& mu, const Cover& u, const FolnerSequence& seq,
                                std::size_t n_max, int refinement_depth, const EntropyOptions& opts) {
  if (refinement_depth < 0) throw std::invalid_argument("h_mu_cover: refinement depth must be >= 0");
  if (n_max < 1) throw std::invalid_argument("h_mu_cover: n_max must be >= 1");
  const int d = sft.dim();
  const FiniteSubset e_r = cube(d, refinement_depth);
  const FiniteSubset base = u.support().empty() ? FiniteSubset(d) : set_product(u.support(), e_r);
  PartitionProfile prof(sft, mu, base, seq);
  const auto& bl = prof.base_language();

  // holders in U (at the identity) and the atom signature over the translates
  const auto fam0 = restrict_cover(u, bl);
  ensure_cover(fam0, bl, sft.alphabet());
  const auto h0 = item_holders(fam0);
  std::vector<std::vector<std::uint32_t>> sig(bl.size());
  {
    std::uint32_t offset = 0;
    for (const auto& g : e_r) {
      const auto fg = restrict_cover(translate(u, g), bl);
      for (std::size_t j = 0; j < fg.sets.size(); ++j)
        for (auto x : fg.sets[j]) sig[x].push_back(offset + static_cast<std::uint32_t>(j));
      offset += static_cast<std::uint32_t>(u.size());
    }
  }
  const AtomTable t = atoms_by_signature(sig, h0);
  auto word_labels = [&](const std::vector<std::uint32_t>& a) {
    std::vector<std::uint32_t> l(bl.size());
    for (std::size_t i = 0; i < bl.size(); ++i) l[i] = a[t.atom_of[i]];
    return l;
  };

  auto cands = assignment_candidates(t, u.size(), opts.candidate_budget);
  // the static minimizer of U_{E_r}, read back through the identity coordinate
  {
    const auto mass = carried_masses(mu, bl);
    const auto fam = pullback_family(u, e_r, bl, true);
    const auto s = static_entropy(fam, mass, opts.assignment_budget);
    std::vector<std::uint32_t> a(t.holders.size());
    for (std::size_t k = 0; k < t.holders.size(); ++k) {
      const auto& chosen = fam.sets[s.choice[t.words[k][0]]];
      a[k] = t.holders[k][0];
      for (auto v : t.holders[k])
        if (std::includes(fam0.sets[v].begin(), fam0.sets[v].end(), chosen.begin(), chosen.end())) {
          a[k] = v;
          break;
        }
    }
    cands.push_back(std::move(a));
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

  // d = 1 interval windows: the conditional increment, otherwise H / |F|
  const bool incremental = interval_sequence(seq) && n_max >= 2;
  const std::size_t n_score = std::min<std::size_t>(n_max, incremental ? 8 : 6);
  auto score = [&](const std::vector<std::uint32_t>& a) {
    const auto l = word_labels(a);
    if (incremental) return prof.entropy(n_score, l) - prof.entropy(n_score - 1, l);
    return prof.entropy(n_score, l) / static_cast<double>(prof.cache(n_score).size);
  };
  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t c = 0; c < cands.size(); ++c) ranked.emplace_back(score(cands[c]), c);
  std::sort(ranked.begin(), ranked.end());

  // first-improvement single-atom moves from the best candidate
  {
    auto cur = cands[ranked.front().second];
    double cur_score = ranked.front().first;
    std::size_t evals = 0;
    const std::size_t eval_budget = 4000;
    for (bool improved = true; improved && evals < eval_budget;) {
      improved = false;
      for (std::size_t k = 0; k < t.holders.size() && evals < eval_budget; ++k) {
        for (auto v : t.holders[k]) {
          if (v == cur[k]) continue;
          const auto old = cur[k];
          cur[k] = v;
          const double s = score(cur);
          ++evals;
          if (s < cur_score - 1e-12) {
            cur_score = s;
            improved = true;
          } else {
            cur[k] = old;
          }
        }
      }
    }
    if (cur_score < ranked.front().first - 1e-12) {
      cands.push_back(cur);
      ranked.insert(ranked.begin(), {cur_score, cands.size() - 1});
    }
  }

  // per window the least value over the finalists; each is H(alpha_F)/|F| for some alpha finer than U
  CoverEntropyEstimate out;
  out.candidates = cands.size();
  const std::size_t finalists = std::min<std::size_t>(ranked.size(), 8);
  std::vector<WindowValue> values;
  double best_cert = kInf;
  bool all_exact = true, approx = false;
  for (std::size_t f = 0; f < finalists; ++f) {
    const auto labels = word_labels(cands[ranked[f].second]);
    auto e = prof.estimate(labels, n_max);
    Partition alpha = partition_from_labels(bl, labels, u.size(), d);
    apply_measure_bounds(e, mu, seq, alpha, opts);
    approx = approx || e.approximate_language;
    if (values.empty()) {
      values = e.values;
    } else {
      for (std::size_t i = 0; i < values.size(); ++i)
        if (e.values[i].value < values[i].value) values[i] = e.values[i];
    }
    if (e.certified_upper < best_cert - 1e-15) {
      best_cert = e.certified_upper;
      all_exact = e.exact;
      out.best = std::move(alpha);
      out.estimate.bound_source = e.bound_source;
    }
  }
  const std::string source = out.estimate.bound_source;
  out.estimate = finish(std::move(values));
  out.estimate.approximate_language = approx;
  apply_bound(out.estimate, best_cert, source);
  out.estimate.exact = all_exact && out.estimate.certified_upper == best_cert;
  if (out.estimate.exact) out.estimate.extrapolated = best_cert;
  return out;
}

KatokCount katok_b(const SFT& sft, const Measure& mu, const FiniteSubset& f, double a, const Cover& u,
                   std::size_t node_budget) {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("katok_b: a must lie in (0,1)");
  const auto lang = language(sft, pullback_window(u, f));
  const auto mass = carried_masses(mu, lang);
  const auto fam = pullback_family(u, f, lang, true);
  ensure_cover(fam, lang, sft.alphabet());
  KatokCount k;
  k.f = f;
  k.a = a;
  if (is_partition(fam)) {
    std::vector<std::pair<double, std::size_t>> m;
    for (std::size_t j = 0; j < fam.sets.size(); ++j) {
      double s = 0;
      for (auto x : fam.sets[j]) s += mass[x];
      m.emplace_back(s, j);
    }
    std::sort(m.begin(), m.end(), [](auto& x, auto& y) { return x.first > y.first || (x.first == y.first && x.second < y.second); });
    for (auto [s, j] : m) {
      if (k.mass >= a - 1e-12) break;
      k.mass += s;
      k.subfamily.push_back(j);
    }
    k.count = k.subfamily.size();
    std::sort(k.subfamily.begin(), k.subfamily.end());
    return k;
  }
  const auto r = min_mass_cover(fam, mass, a, node_budget);
  k.count = r.size;
  k.exact = r.exact;
  k.subfamily = r.chosen;
  std::vector<char> in(lang.size(), 0);
  for (auto j : r.chosen)
    for (auto x : fam.sets[j]) in[x] = 1;
  for (std::size_t i = 0; i < lang.size(); ++i)
    if (in[i]) k.mass += mass[i];
  return k;
}

KatokEstimate katok_entropy(const SFT& sft, const Measure& mu, const Cover& u, const FolnerSequence& seq,
                            std::size_t n_max, double epsilon, const EntropyOptions& opts) {
  if (!mu.ergodic()) throw std::invalid_argument("katok_entropy: measure is not flagged ergodic");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("katok_entropy: epsilon must lie in (0,1)");
  if (n_max < 1) throw std::invalid_argument("katok_entropy: n_max must be >= 1");
  const double a = 1.0 - epsilon;
  const auto nu = min_subcover(sft, u, u.support(), opts.node_budget).size;
  KatokEstimate out;
  out.windows.resize(n_max);
  std::vector<WindowValue> values(n_max);
  parallel_for(n_max, opts.threads, [&](std::size_t i) {
    const auto t0 = Clock::now();
    const std::size_t n = i + 1;
    const FiniteSubset f = folner(seq, n);
    const auto kc = katok_b(sft, mu, f, a, u, opts.node_budget);
    const auto lang = language(sft, pullback_window(u, f));
    const auto mass = carried_masses(mu, lang);
    const auto st = static_entropy(pullback_family(u, f, lang, true), mass, opts.assignment_budget);
    KatokWindow& w = out.windows[i];
    w.n = n;
    w.b = kc.count;
    w.value = std::log(static_cast<double>(std::max<std::size_t>(1, kc.count))) / static_cast<double>(f.size());
    w.h_static = st.value;
    w.weiss_rhs = std::log(static_cast<double>(std::max<std::size_t>(1, kc.count))) +
                  (1.0 - a) * static_cast<double>(f.size()) * std::log(static_cast<double>(nu)) + std::log(2.0);
    w.weiss_ok = w.h_static <= w.weiss_rhs + 1e-12;
    WindowValue& v = values[i];
    v.n = n;
    v.size = f.size();
    v.raw = std::log(static_cast<double>(std::max<std::size_t>(1, kc.count)));
    v.value = w.value;
    v.exact = kc.exact && st.exact;
    v.seconds = seconds_since(t0);
  });
  out.estimate = finish(std::move(values));
  for (const auto& w : out.windows) out.weiss_all = out.weiss_all && w.weiss_ok;
  return out;
}

SeparatedSet separated_set(const SFT& sft, const Cover& u, std::span<const Partition> alphas, const FiniteSubset& f) {
  if (alphas.empty()) throw std::invalid_argument("separated_set: at least one partition required");
  const int d = sft.dim();
  FiniteSubset supp = set_union(u.support(), FiniteSubset::singleton(GroupElement::identity(d)));
  for (const auto& al : alphas) supp = set_union(supp, al.support());
  for (const auto& al : alphas)
    if (!refines(sft, al, u, supp)) throw std::invalid_argument("separated_set: a partition does not refine U");
  SeparatedSet out;
  out.window = f.empty() ? FiniteSubset(d) : set_product(supp, f);
  const auto lang = language(sft, out.window);
  const auto fam = pullback_family(u, f, lang, true);
  ensure_cover(fam, lang, sft.alphabet());
  out.n_cover = min_set_cover(fam).size;
  out.k = alphas.size();
  out.lower_bound = static_cast<double>(out.n_cover) / static_cast<double>(out.k);

  std::vector<std::vector<std::uint32_t>> labels;
  for (const auto& al : alphas) {
    std::vector<std::uint32_t> acc(lang.size(), 0);
    for (const auto& g : f) join_labels(acc, partition_labels(restrict_cover(translate(al, g), lang), "separated_set"));
    labels.push_back(std::move(acc));
  }
  std::vector<std::vector<std::vector<std::uint32_t>>> members(labels.size());
  for (std::size_t l = 0; l < labels.size(); ++l) {
    const auto cells = labels[l].empty() ? 0 : *std::max_element(labels[l].begin(), labels[l].end()) + 1;
    members[l].resize(cells);
    for (std::size_t i = 0; i < lang.size(); ++i) members[l][labels[l][i]].push_back(static_cast<std::uint32_t>(i));
  }
  std::vector<char> alive(lang.size(), 1);
  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < lang.size(); ++i) {
    if (!alive[i]) continue;
    picked.push_back(i);
    for (std::size_t l = 0; l < labels.size(); ++l)
      for (auto j : members[l][labels[l][i]]) alive[j] = 0;
  }
  for (auto i : picked) out.points.push_back(lang.width() ? lang.pattern(i) : Pattern::empty(d));
  for (std::size_t l = 0; l < labels.size(); ++l) {
    std::set<std::uint32_t> seen;
    for (auto i : picked)
      if (!seen.insert(labels[l][i]).second) out.at_most_one_per_atom = false;
  }
  out.bound_holds = out.points.size() * out.k >= out.n_cover;
  if (!out.bound_holds || !out.at_most_one_per_atom)
    throw std::logic_error("separated_set: postcondition #B_F >= N(U_F)/K violated");
  return out;
}

VpReport vp_check(const SFT& sft, const Cover& u, std::span<const Measure> measures, const FolnerSequence& seq,
                  std::size_t n_max, int refinement_depth, const EntropyOptions& opts) {
  VpReport r;
  r.top = h_top(sft, u, seq, n_max, opts);
  const auto base = language(sft, u.support());
  const bool partition = is_partition_on(sft, u, base);
  r.max_measure_upper = -kInf;
  for (std::size_t i = 0; i < measures.size(); ++i) {
    VpMeasureResult m;
    m.label = std::string(to_string(measures[i].kind())) + "#" + std::to_string(i);
    m.estimate = partition ? h_mu_partition(sft, measures[i], u, seq, n_max, opts)
                           : h_mu_cover(sft, measures[i], u, seq, n_max, refinement_depth, opts).estimate;
    if (m.estimate.certified_upper > r.max_measure_upper) {
      r.max_measure_upper = m.estimate.certified_upper;
      r.argmax = i;
    }
    r.one_sided_ok = r.one_sided_ok && m.estimate.certified_upper <= r.top.certified_upper + 1e-9;
    r.measures.push_back(std::move(m));
  }
  if (measures.empty()) r.max_measure_upper = 0.0;
  r.gap = r.top.certified_upper - r.max_measure_upper;
  return r;
}

Measure empirical_vp_measure(const SFT& sft, const Cover& u, std::size_t n, std::span<const Partition> partitions,
                             const FolnerSequence& seq, int pad) {
  if (sft.dim() != 1) throw DimensionError("empirical_vp_measure needs d = 1");
  const FiniteSubset f = folner(seq, n);
  std::vector<Partition> parts(partitions.begin(), partitions.end());
  if (parts.empty()) parts.push_back(u);
  const auto s = separated_set(sft, u, parts, f);
  if (pad < 0) pad = static_cast<int>(f.size());
  const auto lo = s.window.lower_corner()[0], hi = s.window.upper_corner()[0];
  if (s.window.size() != static_cast<std::size_t>(hi - lo + 1))
    throw std::invalid_argument("empirical_vp_measure: window is not an interval");
  EmpiricalSpec spec;
  spec.window = FiniteSubset::interval(lo, hi + pad);
  spec.averaging_set = f;
  for (const auto& p : s.points) spec.base_points.push_back(extend_word(sft, p, 0, pad));
  return Measure::empirical(sft.alphabet(), std::move(spec));
}

}  // namespace locent
