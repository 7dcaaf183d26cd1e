#include "locent/subshift.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>

#include "locent/spectral.hpp"
#include "locent/window.hpp"

namespace locent {

namespace {

constexpr std::size_t kMaxWindowWords = std::size_t{1} << 24;
constexpr std::size_t kMaxGraphStates = std::size_t{1} << 20;

void check_same_dim(int a, int b, const char* what) {
  if (a != b) throw DimensionError(std::string(what) + ": dimension mismatch");
}

// Enumerate all words of length n over k symbols in lexicographic order.
template <typename F>
void for_each_word(std::size_t k, std::size_t n, F&& f) {
  std::vector<Symbol> w(n, 0);
  for (;;) {
    f(std::span<const Symbol>(w));
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++w[i] < k) break;
      w[i] = 0;
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

std::size_t checked_pow(std::size_t base, std::size_t exp, std::size_t cap, const char* what) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) throw std::length_error(std::string(what) + ": too many words");
    r *= base;
  }
  return r;
}

// d = 1: whether some bi-infinite point of the SFT matches p.
bool admissible_1d(const SFT& sft, const Pattern& p) {
  if (p.shape.empty()) return !sft.graph().empty();
  const TransferGraph& g = sft.graph();
  if (g.empty()) return false;
  const auto lo = p.shape.lower_corner()[0];
  const auto hi = p.shape.upper_corner()[0];
  const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
  const std::size_t m = static_cast<std::size_t>(g.block - 1);
  std::vector<int> req(n, -1);
  for (std::size_t i = 0; i < p.shape.size(); ++i)
    req[static_cast<std::size_t>(p.shape[i][0] - lo)] = p.symbols[i];

  std::vector<char> cur(g.states.size(), 0);
  bool any = false;
  for (std::size_t s = 0; s < g.states.size(); ++s) {
    bool ok = true;
    for (std::size_t j = 0; j < m && j < n; ++j)
      if (req[j] >= 0 && g.states[s][j] != req[j]) { ok = false; break; }
    cur[s] = ok;
    any = any || ok;
  }
  if (!any) return false;
  std::vector<char> nxt(g.states.size());
  for (std::size_t j = m; j < n; ++j) {
    std::fill(nxt.begin(), nxt.end(), 0);
    any = false;
    for (std::size_t s = 0; s < g.states.size(); ++s) {
      if (!cur[s]) continue;
      for (auto [sym, t] : g.next[s])
        if (req[j] < 0 || req[j] == sym) { nxt[t] = 1; any = true; }
    }
    if (!any) return false;
    cur.swap(nxt);
  }
  return true;
}

std::shared_ptr<const TransferGraph> build_graph(const SFT& sft) {
  auto g = std::make_shared<TransferGraph>();
  g->block = std::max(2, sft.memory());
  const std::size_t m = static_cast<std::size_t>(g->block - 1);
  const std::size_t k = sft.alphabet().size();
  checked_pow(k, m + 1, kMaxGraphStates * 16, "transfer graph");

  std::vector<std::vector<Symbol>> states;
  for_each_word(k, m, [&](std::span<const Symbol> w) {
    if (sft.locally_admissible(Pattern::word(w))) states.emplace_back(w.begin(), w.end());
  });
  // states are lexicographic, so lookups are binary searches
  auto index = [&](std::span<const Symbol> w) -> std::ptrdiff_t {
    auto it = std::lower_bound(states.begin(), states.end(), w, [](const auto& a, const auto& b) {
      return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    if (it == states.end() || !std::equal(it->begin(), it->end(), w.begin(), w.end())) return -1;
    return it - states.begin();
  };

  std::vector<std::vector<std::pair<Symbol, std::size_t>>> next(states.size());
  std::vector<Symbol> buf(m + 1);
  for (std::size_t s = 0; s < states.size(); ++s) {
    std::copy(states[s].begin(), states[s].end(), buf.begin());
    for (std::size_t a = 0; a < k; ++a) {
      buf[m] = static_cast<Symbol>(a);
      if (!sft.locally_admissible(Pattern::word(buf))) continue;
      auto t = index(std::span<const Symbol>(buf).subspan(1));
      if (t >= 0) next[s].emplace_back(static_cast<Symbol>(a), static_cast<std::size_t>(t));
    }
  }

  // Keep states lying on a bi-infinite path.
  std::vector<char> alive(states.size(), 1);
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::size_t> indeg(states.size(), 0), outdeg(states.size(), 0);
    for (std::size_t s = 0; s < states.size(); ++s) {
      if (!alive[s]) continue;
      for (auto [a, t] : next[s])
        if (alive[t]) { ++outdeg[s]; ++indeg[t]; }
    }
    for (std::size_t s = 0; s < states.size(); ++s)
      if (alive[s] && (indeg[s] == 0 || outdeg[s] == 0)) { alive[s] = 0; changed = true; }
  }
  std::vector<std::size_t> remap(states.size(), 0);
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (!alive[s]) continue;
    remap[s] = g->states.size();
    g->states.push_back(states[s]);
  }
  g->next.resize(g->states.size());
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (!alive[s]) continue;
    for (auto [a, t] : next[s])
      if (alive[t]) g->next[remap[s]].emplace_back(a, remap[t]);
  }
  return g;
}

std::vector<Symbol> language_rows_1d(const SFT& sft, std::size_t n) {
  const TransferGraph& g = sft.graph();
  if (g.empty()) throw EmptyLanguageError("SFT has an empty language");
  const std::size_t m = static_cast<std::size_t>(g.block - 1);
  std::vector<Symbol> rows;
  if (n == 0) return rows;
  if (n <= m) {
    std::vector<std::vector<Symbol>> pre;
    for (const auto& s : g.states) pre.emplace_back(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n));
    pre.erase(std::unique(pre.begin(), pre.end()), pre.end());
    for (const auto& w : pre) rows.insert(rows.end(), w.begin(), w.end());
    return rows;
  }
  // Path counts from each state with `r` steps left, to guard the size.
  std::vector<double> cnt(g.states.size(), 1.0), tmp(g.states.size());
  for (std::size_t r = 0; r < n - m; ++r) {
    for (std::size_t s = 0; s < g.states.size(); ++s) {
      double c = 0;
      for (auto [a, t] : g.next[s]) c += cnt[t];
      tmp[s] = c;
    }
    cnt.swap(tmp);
  }
  const double total = std::accumulate(cnt.begin(), cnt.end(), 0.0);
  if (total > static_cast<double>(kMaxWindowWords)) throw std::length_error("language: window too large");
  rows.reserve(static_cast<std::size_t>(total) * n);

  std::vector<Symbol> w(n);
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t s, std::size_t pos) {
    if (pos == n) {
      rows.insert(rows.end(), w.begin(), w.end());
      return;
    }
    for (auto [a, t] : g.next[s]) {
      w[pos] = a;
      dfs(t, pos + 1);
    }
  };
  for (std::size_t s = 0; s < g.states.size(); ++s) {
    std::copy(g.states[s].begin(), g.states[s].end(), w.begin());
    dfs(s, m);
  }
  return rows;
}

void sort_unique_rows(std::vector<Symbol>& data, std::size_t width) {
  if (width == 0) {
    data.clear();
    return;
  }
  const std::size_t n = data.size() / width;
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  auto row = [&](std::size_t i) { return data.begin() + static_cast<std::ptrdiff_t>(i * width); };
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(row(a), row(a) + static_cast<std::ptrdiff_t>(width), row(b),
                                        row(b) + static_cast<std::ptrdiff_t>(width));
  });
  std::vector<Symbol> out;
  out.reserve(data.size());
  for (std::size_t k = 0; k < n; ++k) {
    auto r = row(idx[k]);
    if (k > 0) {
      auto prev = out.end() - static_cast<std::ptrdiff_t>(width);
      if (std::equal(r, r + static_cast<std::ptrdiff_t>(width), prev)) continue;
    }
    out.insert(out.end(), r, r + static_cast<std::ptrdiff_t>(width));
  }
  data.swap(out);
}

WindowLanguage language_1d(const SFT& sft, const FiniteSubset& window) {
  if (window.empty()) return WindowLanguage(window, sft.alphabet().size(), {}, true);
  const auto lo = window.lower_corner()[0];
  const auto hi = window.upper_corner()[0];
  const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
  std::vector<Symbol> rows = language_rows_1d(sft, n);
  if (window.size() == n) return WindowLanguage(window, sft.alphabet().size(), std::move(rows), true);
  std::vector<std::size_t> cols;
  for (const auto& g : window) cols.push_back(static_cast<std::size_t>(g[0] - lo));
  std::vector<Symbol> proj;
  proj.reserve(rows.size() / n * cols.size());
  for (std::size_t r = 0; r < rows.size() / n; ++r)
    for (auto c : cols) proj.push_back(rows[r * n + c]);
  sort_unique_rows(proj, cols.size());
  return WindowLanguage(window, sft.alphabet().size(), std::move(proj), true);
}

WindowLanguage language_nd(const SFT& sft, const FiniteSubset& window, int margin) {
  const int d = sft.dim();
  const std::size_t k = sft.alphabet().size();
  const FiniteSubset padded = window.empty() ? window : set_product(window, cube(d, margin));
  // Cells of the window first, then the padding.
  std::vector<GroupElement> order(window.begin(), window.end());
  for (const auto& g : padded)
    if (!window.contains(g)) order.push_back(g);
  const std::size_t nw = window.size();
  const std::size_t np = order.size();
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> pos;
  for (std::size_t i = 0; i < np; ++i) pos.emplace(order[i], i);

  // Forbidden placements fully inside the padded window, keyed by the last cell assigned.
  struct Placement {
    std::vector<std::size_t> cells;
    std::vector<Symbol> symbols;
  };
  std::vector<std::vector<Placement>> checks(np);
  for (const auto& f : sft.forbidden()) {
    if (f.shape.empty()) throw EmptyLanguageError("SFT forbids the empty pattern");
    std::set<GroupElement> shifts;
    for (const auto& g : order) shifts.insert(g - f.shape[0]);
    for (const auto& t : shifts) {
      Placement pl;
      bool inside = true;
      std::size_t last = 0;
      for (std::size_t i = 0; i < f.shape.size(); ++i) {
        auto it = pos.find(f.shape[i] + t);
        if (it == pos.end()) { inside = false; break; }
        pl.cells.push_back(it->second);
        pl.symbols.push_back(f.symbols[i]);
        last = std::max(last, it->second);
      }
      if (inside) checks[last].push_back(std::move(pl));
    }
  }

  std::vector<Symbol> cfg(np, 0);
  auto consistent = [&](std::size_t i) {
    for (const auto& pl : checks[i]) {
      bool hit = true;
      for (std::size_t j = 0; j < pl.cells.size(); ++j)
        if (cfg[pl.cells[j]] != pl.symbols[j]) { hit = false; break; }
      if (hit) return false;
    }
    return true;
  };
  std::function<bool(std::size_t)> extend = [&](std::size_t i) -> bool {
    if (i == np) return true;
    for (std::size_t a = 0; a < k; ++a) {
      cfg[i] = static_cast<Symbol>(a);
      if (consistent(i) && extend(i + 1)) return true;
    }
    return false;
  };
  std::vector<Symbol> rows;
  std::function<void(std::size_t)> enumerate = [&](std::size_t i) {
    if (i == nw) {
      if (extend(nw)) {
        rows.insert(rows.end(), cfg.begin(), cfg.begin() + static_cast<std::ptrdiff_t>(nw));
        if (nw > 0 && rows.size() / nw > kMaxWindowWords) throw std::length_error("language: window too large");
      }
      return;
    }
    for (std::size_t a = 0; a < k; ++a) {
      cfg[i] = static_cast<Symbol>(a);
      if (consistent(i)) enumerate(i + 1);
    }
  };
  enumerate(0);
  if (nw == 0) {
    if (!extend(0)) throw EmptyLanguageError("SFT has an empty language");
    return WindowLanguage(window, k, {}, false);
  }
  if (rows.empty()) throw EmptyLanguageError("SFT has an empty language on the window");
  return WindowLanguage(window, k, std::move(rows), false);
}

}  // namespace

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw std::invalid_argument("alphabet must be non-empty");
  if (symbols_.size() > 256) throw std::invalid_argument("alphabet larger than 256 symbols");
  std::set<std::string> seen(symbols_.begin(), symbols_.end());
  if (seen.size() != symbols_.size()) throw std::invalid_argument("alphabet has duplicate symbols");
}

Symbol Alphabet::index_of(const std::string& token) const {
  auto it = std::find(symbols_.begin(), symbols_.end(), token);
  if (it == symbols_.end()) throw std::invalid_argument("unknown symbol '" + token + "'");
  return static_cast<Symbol>(it - symbols_.begin());
}

// ---------------------------------------------------------------- Pattern

Pattern::Pattern(FiniteSubset s, std::vector<Symbol> sy) : shape(std::move(s)), symbols(std::move(sy)) {
  if (shape.size() != symbols.size()) throw std::invalid_argument("pattern: assignment not total on shape");
}

Pattern Pattern::word(std::span<const Symbol> w, GroupElement::Coord offset) {
  if (w.empty()) return Pattern::empty(1);
  return Pattern(FiniteSubset::interval(offset, offset + static_cast<GroupElement::Coord>(w.size()) - 1),
                 std::vector<Symbol>(w.begin(), w.end()));
}

std::optional<Symbol> Pattern::at(const GroupElement& g) const {
  auto i = shape.index_of(g);
  if (i < 0) return std::nullopt;
  return symbols[static_cast<std::size_t>(i)];
}

Pattern Pattern::translated(const GroupElement& g) const {
  // translation preserves lexicographic order, so symbols stay aligned
  return Pattern(shape.translated(g), symbols);
}

Pattern Pattern::restricted(const FiniteSubset& sub) const {
  std::vector<Symbol> out;
  out.reserve(sub.size());
  for (const auto& g : sub) {
    auto i = shape.index_of(g);
    if (i < 0) throw std::invalid_argument("pattern: restriction outside shape");
    out.push_back(symbols[static_cast<std::size_t>(i)]);
  }
  return Pattern(sub, std::move(out));
}

bool operator<(const Pattern& a, const Pattern& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  if (a.shape.elements() != b.shape.elements()) return a.shape.elements() < b.shape.elements();
  return a.symbols < b.symbols;
}

std::optional<Pattern> merge(const Pattern& a, const Pattern& b) {
  check_same_dim(a.dim(), b.dim(), "merge");
  std::vector<GroupElement> el;
  std::vector<Symbol> sy;
  el.reserve(a.shape.size() + b.shape.size());
  sy.reserve(a.shape.size() + b.shape.size());
  std::size_t i = 0, j = 0;
  while (i < a.shape.size() || j < b.shape.size()) {
    if (j == b.shape.size() || (i < a.shape.size() && a.shape[i] < b.shape[j])) {
      el.push_back(a.shape[i]);
      sy.push_back(a.symbols[i++]);
    } else if (i == a.shape.size() || b.shape[j] < a.shape[i]) {
      el.push_back(b.shape[j]);
      sy.push_back(b.symbols[j++]);
    } else {
      if (a.symbols[i] != b.symbols[j]) return std::nullopt;
      el.push_back(a.shape[i]);
      sy.push_back(a.symbols[i]);
      ++i;
      ++j;
    }
  }
  return Pattern(FiniteSubset(a.dim(), std::move(el)), std::move(sy));
}

// ---------------------------------------------------------------- SFT

SFT::SFT(Alphabet alphabet, int dim, std::vector<Pattern> forbidden)
    : alphabet_(std::move(alphabet)), dim_(dim), forbidden_(std::move(forbidden)) {
  if (dim_ < 1 || dim_ > GroupElement::kMaxDim) throw DimensionError("SFT dimension must be 1..3");
  for (const auto& f : forbidden_) {
    check_same_dim(f.dim(), dim_, "SFT forbidden pattern");
    for (auto s : f.symbols)
      if (s >= alphabet_.size()) throw std::invalid_argument("forbidden pattern uses a symbol outside the alphabet");
  }
  if (dim_ == 1) graph_ = build_graph(*this);
}

SFT SFT::full_shift(Alphabet alphabet, int dim) { return SFT(std::move(alphabet), dim, {}); }

SFT SFT::golden_mean() {
  const Symbol w[] = {1, 1};
  return SFT(Alphabet::binary(), 1, {Pattern::word(w)});
}

SFT SFT::periodic_orbit(Alphabet alphabet, std::span<const Symbol> word) {
  if (word.empty()) throw std::invalid_argument("periodic word must be non-empty");
  const std::size_t p = word.size();
  const std::size_t k = alphabet.size();
  for (auto s : word)
    if (s >= k) throw std::invalid_argument("periodic word uses a symbol outside the alphabet");
  std::set<std::vector<Symbol>> rotations;
  for (std::size_t r = 0; r < p; ++r) {
    std::vector<Symbol> v(p);
    for (std::size_t i = 0; i < p; ++i) v[i] = word[(r + i) % p];
    rotations.insert(v);
  }
  const std::size_t points = rotations.size();
  for (std::size_t len = 2; len <= p + 1; ++len) {
    std::set<std::vector<Symbol>> allowed;
    for (std::size_t r = 0; r < p; ++r) {
      std::vector<Symbol> v(len);
      for (std::size_t i = 0; i < len; ++i) v[i] = word[(r + i) % p];
      allowed.insert(v);
    }
    std::vector<Pattern> forb;
    checked_pow(k, len, kMaxWindowWords, "periodic_orbit");
    for_each_word(k, len, [&](std::span<const Symbol> w) {
      if (!allowed.count(std::vector<Symbol>(w.begin(), w.end()))) forb.push_back(Pattern::word(w));
    });
    SFT x(alphabet, 1, std::move(forb));
    // every point has period dividing p, so words of length 2p + len pin the point
    auto lang = language(x, FiniteSubset::interval(0, static_cast<GroupElement::Coord>(2 * p + len) - 1));
    if (lang.size() == points) return x;
  }
  throw std::logic_error("periodic_orbit: no block length isolates the orbit");
}

SFT SFT::product(const SFT& a, const SFT& b) {
  check_same_dim(a.dim(), b.dim(), "SFT product");
  const std::size_t ka = a.alphabet().size(), kb = b.alphabet().size();
  if (ka * kb > 256) throw std::invalid_argument("product alphabet larger than 256 symbols");
  std::vector<std::string> names;
  std::vector<Symbol> pa, pb;
  for (std::size_t i = 0; i < ka; ++i)
    for (std::size_t j = 0; j < kb; ++j) {
      names.push_back(a.alphabet().name(static_cast<Symbol>(i)) + "|" + b.alphabet().name(static_cast<Symbol>(j)));
      pa.push_back(static_cast<Symbol>(i));
      pb.push_back(static_cast<Symbol>(j));
    }
  std::vector<Pattern> forb;
  auto lift = [&](const Pattern& f, bool first) {
    const std::size_t other = first ? kb : ka;
    checked_pow(other, f.shape.size(), kMaxWindowWords, "SFT product");
    for_each_word(other, f.shape.size(), [&](std::span<const Symbol> w) {
      std::vector<Symbol> sy(f.shape.size());
      for (std::size_t i = 0; i < sy.size(); ++i)
        sy[i] = static_cast<Symbol>(first ? f.symbols[i] * kb + w[i] : w[i] * kb + f.symbols[i]);
      forb.emplace_back(f.shape, std::move(sy));
    });
  };
  for (const auto& f : a.forbidden()) lift(f, true);
  for (const auto& f : b.forbidden()) lift(f, false);
  SFT x(Alphabet(std::move(names)), a.dim(), std::move(forb));
  x.projections_ = {std::move(pa), std::move(pb)};
  x.factors_ = {a, b};
  x.fully_supported_ = a.fully_supported() && b.fully_supported();
  return x;
}

int SFT::memory() const {
  int m = 0;
  for (const auto& f : forbidden_) {
    if (f.shape.empty()) continue;
    auto lo = f.shape.lower_corner(), hi = f.shape.upper_corner();
    for (int i = 0; i < dim_; ++i) m = std::max(m, static_cast<int>(hi[i] - lo[i] + 1));
  }
  return m;
}

bool SFT::locally_admissible(const Pattern& p) const {
  for (const auto& f : forbidden_) {
    if (f.shape.empty()) return false;
    if (f.shape.size() > p.shape.size()) continue;
    for (const auto& base : p.shape) {
      const GroupElement t = base - f.shape[0];
      bool hit = true;
      for (std::size_t i = 0; i < f.shape.size() && hit; ++i) {
        auto s = p.at(f.shape[i] + t);
        hit = s && *s == f.symbols[i];
      }
      if (hit) return false;
    }
  }
  return true;
}

const TransferGraph& SFT::graph() const {
  if (dim_ != 1) throw DimensionError("transfer graph needs d = 1");
  return *graph_;
}

// ---------------------------------------------------------------- language

WindowLanguage::WindowLanguage(FiniteSubset window, std::size_t alphabet_size, std::vector<Symbol> data,
                               bool exact)
    : window_(std::move(window)), alphabet_size_(alphabet_size), data_(std::move(data)), exact_(exact) {
  count_ = window_.empty() ? 1 : data_.size() / window_.size();
}

Pattern WindowLanguage::pattern(std::size_t i) const {
  auto w = word(i);
  return Pattern(window_, std::vector<Symbol>(w.begin(), w.end()));
}

std::optional<std::size_t> WindowLanguage::find(std::span<const Symbol> w) const {
  if (w.size() != width()) return std::nullopt;
  if (width() == 0) return 0;
  std::size_t lo = 0, hi = count_;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto r = word(mid);
    if (std::lexicographical_compare(r.begin(), r.end(), w.begin(), w.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < count_ && std::ranges::equal(word(lo), w)) return lo;
  return std::nullopt;
}

std::vector<std::size_t> WindowLanguage::columns(const FiniteSubset& shape) const {
  std::vector<std::size_t> cols;
  cols.reserve(shape.size());
  for (const auto& g : shape) {
    auto i = window_.index_of(g);
    if (i < 0) throw WindowTooSmallError("window does not contain cell " + to_string(g));
    cols.push_back(static_cast<std::size_t>(i));
  }
  return cols;
}

WindowLanguage language(const SFT& sft, const FiniteSubset& window, int margin) {
  if (margin < 0) throw std::invalid_argument("language: margin must be >= 0");
  check_same_dim(window.dim(), sft.dim(), "language");
  if (sft.dim() == 1) return language_1d(sft, window);
  return language_nd(sft, window, margin);
}

// ---------------------------------------------------------------- sets

SymbolicSet SymbolicSet::at(const GroupElement& g, Symbol s) {
  return cylinder(Pattern(FiniteSubset::singleton(g), {s}));
}

bool SymbolicSet::is_syntactically_full() const {
  return std::any_of(cylinders.begin(), cylinders.end(), [](const Pattern& p) { return p.shape.empty(); });
}

FiniteSubset SymbolicSet::support() const {
  FiniteSubset s(dim);
  for (const auto& c : cylinders) s = set_union(s, c.shape);
  return s;
}

void SymbolicSet::normalize() {
  if (is_syntactically_full()) {
    cylinders = {Pattern::empty(dim)};
    return;
  }
  std::sort(cylinders.begin(), cylinders.end());
  cylinders.erase(std::unique(cylinders.begin(), cylinders.end()), cylinders.end());
}

FiniteSubset Cover::support() const {
  FiniteSubset s(dim);
  for (const auto& e : elements) s = set_union(s, e.support());
  return s;
}

Cover Cover::symbol_partition(const Alphabet& alphabet, const GroupElement& g) {
  Cover c{g.dim(), {}, true};
  for (std::size_t a = 0; a < alphabet.size(); ++a) c.elements.push_back(SymbolicSet::at(g, static_cast<Symbol>(a)));
  return c;
}

SymbolicSet translate(const SymbolicSet& u, const GroupElement& g) {
  check_same_dim(u.dim, g.dim(), "translate");
  SymbolicSet r{u.dim, {}};
  r.cylinders.reserve(u.cylinders.size());
  for (const auto& c : u.cylinders) r.cylinders.push_back(c.translated(g));
  return r;
}

Cover translate(const Cover& u, const GroupElement& g) {
  Cover r{u.dim, {}, u.open};
  r.elements.reserve(u.elements.size());
  for (const auto& e : u.elements) r.elements.push_back(translate(e, g));
  return r;
}

SymbolicSet intersect(const SymbolicSet& a, const SymbolicSet& b) {
  check_same_dim(a.dim, b.dim, "intersect");
  SymbolicSet r{a.dim, {}};
  for (const auto& p : a.cylinders)
    for (const auto& q : b.cylinders)
      if (auto m = merge(p, q)) r.cylinders.push_back(std::move(*m));
  r.normalize();
  return r;
}

bool is_nonempty(const SFT& sft, const SymbolicSet& u) {
  check_same_dim(u.dim, sft.dim(), "is_nonempty");
  for (const auto& c : u.cylinders) {
    if (sft.dim() == 1) {
      if (admissible_1d(sft, c)) return true;
    } else {
      if (c.shape.empty()) return true;
      auto lang = language(sft, c.shape);
      if (lang.find(c.symbols)) return true;
    }
  }
  return false;
}

bool same_set(const SFT& sft, const SymbolicSet& a, const SymbolicSet& b) {
  const FiniteSubset w = set_union(a.support(), b.support());
  auto lang = language(sft, w);
  return members(a, lang) == members(b, lang);
}

SymbolicSet complement(const SFT& sft, const SymbolicSet& u, const FiniteSubset& window) {
  auto lang = language(sft, window);
  auto in = members(u, lang);
  SymbolicSet r{u.dim, {}};
  std::size_t j = 0;
  for (std::size_t i = 0; i < lang.size(); ++i) {
    if (j < in.size() && in[j] == i) {
      ++j;
      continue;
    }
    r.cylinders.push_back(lang.pattern(i));
  }
  return r;
}

bool contains(const SymbolicSet& u, const Pattern& w) {
  for (const auto& c : u.cylinders) {
    bool ok = true;
    for (std::size_t i = 0; i < c.shape.size() && ok; ++i) {
      auto s = w.at(c.shape[i]);
      ok = s && *s == c.symbols[i];
    }
    if (ok) return true;
  }
  return false;
}

Cover join(const SFT& sft, std::span<const Cover> covers) {
  const int d = sft.dim();
  Cover acc = Cover::trivial(d);
  for (const auto& c : covers) {
    check_same_dim(c.dim, d, "join");
    Cover next{d, {}, acc.open && c.open};
    std::set<std::vector<Pattern>> seen;
    for (const auto& a : acc.elements)
      for (const auto& b : c.elements) {
        SymbolicSet s = intersect(a, b);
        if (!is_nonempty(sft, s)) continue;
        if (seen.insert(s.cylinders).second) next.elements.push_back(std::move(s));
      }
    acc = std::move(next);
  }
  return acc;
}

Cover cover_pullback(const SFT& sft, const Cover& u, const FiniteSubset& f) {
  std::vector<Cover> parts;
  parts.reserve(f.size());
  for (const auto& g : f) parts.push_back(translate(u, g));
  Cover r = join(sft, parts);
  r.open = u.open;
  return r;
}

Partition atoms(const SFT& sft, const Cover& u, const FiniteSubset& window) {
  auto lang = language(sft, window);
  const auto fam = restrict_cover(u, lang);
  std::map<std::vector<char>, std::size_t> sig_index;
  Partition p{u.dim, {}, false};
  std::vector<char> sig(u.size());
  std::vector<std::vector<char>> table(u.size(), std::vector<char>(lang.size(), 0));
  for (std::size_t e = 0; e < u.size(); ++e)
    for (auto i : fam.sets[e]) table[e][i] = 1;
  for (std::size_t i = 0; i < lang.size(); ++i) {
    for (std::size_t e = 0; e < u.size(); ++e) sig[e] = table[e][i];
    auto [it, fresh] = sig_index.emplace(sig, p.elements.size());
    if (fresh) p.elements.push_back(SymbolicSet{u.dim, {}});
    p.elements[it->second].cylinders.push_back(window.empty() ? Pattern::empty(u.dim) : lang.pattern(i));
  }
  return p;
}

bool is_cover(const SFT& sft, const Cover& u, const FiniteSubset& window) {
  auto lang = language(sft, window);
  auto fam = restrict_cover(u, lang);
  std::vector<char> hit(lang.size(), 0);
  for (const auto& s : fam.sets)
    for (auto i : s) hit[i] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

bool is_partition(const SFT& sft, const Cover& u, const FiniteSubset& window) {
  auto lang = language(sft, window);
  auto fam = restrict_cover(u, lang);
  std::vector<int> hit(lang.size(), 0);
  for (const auto& s : fam.sets)
    for (auto i : s) ++hit[i];
  return std::all_of(hit.begin(), hit.end(), [](int c) { return c == 1; });
}

bool refines(const SFT& sft, const Cover& fine, const Cover& coarse, const FiniteSubset& window) {
  auto lang = language(sft, window);
  auto f = restrict_cover(fine, lang);
  auto c = restrict_cover(coarse, lang);
  for (const auto& a : f.sets) {
    bool inside = std::any_of(c.sets.begin(), c.sets.end(), [&](const ItemSet& b) {
      return std::includes(b.begin(), b.end(), a.begin(), a.end());
    });
    if (!inside) return false;
  }
  return true;
}

FiniteSubset return_set(const SFT& sft, const SymbolicSet& u, const SymbolicSet& v, const FiniteSubset& probe) {
  std::vector<GroupElement> out;
  for (const auto& g : probe)
    if (is_nonempty(sft, intersect(u, translate(v, g)))) out.push_back(g);
  return FiniteSubset(probe.dim(), std::move(out));
}

FiniteSubset cube(int dim, int r) {
  if (r < 0) throw std::invalid_argument("cube: radius must be >= 0");
  GroupElement lo(dim), hi(dim);
  for (int i = 0; i < dim; ++i) {
    lo[i] = -r;
    hi[i] = r;
  }
  return FiniteSubset::box(lo, hi);
}

Pattern extend_word(const SFT& sft, const Pattern& word, int left, int right) {
  if (sft.dim() != 1) throw DimensionError("extend_word needs d = 1");
  if (left < 0 || right < 0) throw std::invalid_argument("extend_word: negative extension");
  if (word.shape.empty()) throw std::invalid_argument("extend_word: empty word");
  const auto lo = word.shape.lower_corner()[0], hi = word.shape.upper_corner()[0];
  if (word.shape.size() != static_cast<std::size_t>(hi - lo + 1))
    throw std::invalid_argument("extend_word: shape is not an interval");
  if (!admissible_1d(sft, word)) throw std::invalid_argument("extend_word: word is not admissible");
  std::vector<Symbol> w = word.symbols;
  const std::size_t k = sft.alphabet().size();
  auto try_symbol = [&](std::vector<Symbol>& cand, GroupElement::Coord off) {
    return admissible_1d(sft, Pattern::word(cand, off));
  };
  for (int r = 0; r < right; ++r) {
    w.push_back(0);
    std::size_t a = 0;
    for (; a < k; ++a) {
      w.back() = static_cast<Symbol>(a);
      if (try_symbol(w, lo)) break;
    }
    if (a == k) throw std::logic_error("extend_word: admissible word has no right extension");
  }
  auto off = lo;
  for (int l = 0; l < left; ++l) {
    w.insert(w.begin(), Symbol{0});
    --off;
    std::size_t a = 0;
    for (; a < k; ++a) {
      w.front() = static_cast<Symbol>(a);
      if (try_symbol(w, off)) break;
    }
    if (a == k) throw std::logic_error("extend_word: admissible word has no left extension");
  }
  return Pattern::word(w, off);
}

double sft_entropy(const SFT& sft) {
  const TransferGraph& g = sft.graph();
  if (g.empty()) throw EmptyLanguageError("SFT has an empty language");
  const std::size_t n = g.states.size();
  std::vector<double> m(n * n, 0.0);
  for (std::size_t s = 0; s < n; ++s)
    for (auto [a, t] : g.next[s]) m[s * n + t] += 1.0;
  return std::log(std::max(1.0, spectral_radius(n, m)));
}

}  // namespace locent
