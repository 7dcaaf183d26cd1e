#include "locent/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace locent {

namespace {

// Maps points of a finite set to their canonical positions. Dense over the
// bounding box when that box is not much larger than the set.
class PointIndex {
 public:
  explicit PointIndex(const FiniteSubset& s) : dim_(s.dim()) {
    if (s.empty()) return;
    lo_ = s.lower_corner();
    const auto hi = s.upper_corner();
    std::size_t volume = 1;
    bool small = true;
    for (int i = 0; i < dim_; ++i) {
      ext_[i] = static_cast<std::size_t>(hi[i] - lo_[i] + 1);
      volume *= ext_[i];
      if (volume > 16 * s.size() + 4096) small = false;
    }
    if (small) {
      dense_.assign(volume, -1);
      for (std::size_t i = 0; i < s.size(); ++i) dense_[offset(s[i])] = static_cast<std::ptrdiff_t>(i);
    } else {
      for (std::size_t i = 0; i < s.size(); ++i) sparse_.emplace(s[i], static_cast<std::ptrdiff_t>(i));
    }
  }

  std::ptrdiff_t find(const GroupElement& g) const {
    if (!dense_.empty()) {
      for (int i = 0; i < dim_; ++i) {
        const auto c = g[i] - lo_[i];
        if (c < 0 || static_cast<std::size_t>(c) >= ext_[i]) return -1;
      }
      return dense_[offset(g)];
    }
    auto it = sparse_.find(g);
    return it == sparse_.end() ? -1 : it->second;
  }

 private:
  std::size_t offset(const GroupElement& g) const {
    std::size_t off = 0;
    for (int i = 0; i < dim_; ++i) off = off * ext_[i] + static_cast<std::size_t>(g[i] - lo_[i]);
    return off;
  }

  int dim_;
  GroupElement lo_;
  std::array<std::size_t, GroupElement::kMaxDim> ext_{};
  std::vector<std::ptrdiff_t> dense_;
  std::unordered_map<GroupElement, std::ptrdiff_t, GroupElementHash> sparse_;
};

void check_epsilon(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("epsilon must lie in (0,1)");
}

// Lexicographic comparison of canonical element lists.
bool lex_less(const FiniteSubset& a, const FiniteSubset& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

DisjointCheck epsilon_disjoint_check(std::span<const FiniteSubset> family, double eps) {
  check_epsilon(eps);
  if (family.empty()) throw PreconditionError("epsilon_disjoint_check: empty family");
  DisjointFamilyWitness w;
  w.epsilon = eps;
  std::unordered_set<GroupElement, GroupElementHash> claimed;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& a = family[i];
    std::vector<GroupElement> core;
    for (const auto& g : a)
      if (!claimed.contains(g)) core.push_back(g);
    const double ratio = a.empty() ? 0.0 : static_cast<double>(core.size()) / static_cast<double>(a.size());
    if (!(ratio > 1.0 - eps)) return DisjointFailure{i, ratio};
    claimed.insert(core.begin(), core.end());
    w.members.push_back(a);
    w.cores.emplace_back(a.dim(), std::move(core));
  }
  return w;
}

bool is_even_cover(std::span<const FiniteSubset> members, const FiniteSubset& target, std::size_t m,
                   double delta) {
  const PointIndex idx(target);
  std::vector<std::size_t> mult(target.size(), 0);
  std::size_t total = 0;
  for (const auto& a : members) {
    for (const auto& g : a) {
      const auto i = idx.find(g);
      if (i < 0) return false;
      if (++mult[static_cast<std::size_t>(i)] > m) return false;
    }
    total += a.size();
  }
  return static_cast<double>(total) >=
         (1.0 - delta) * static_cast<double>(m) * static_cast<double>(target.size());
}

EvenCoverWitness even_cover_translates(const FiniteSubset& s, const FiniteSubset& a, double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) throw PreconditionError("delta must lie in [0,1)");
  if (s.dim() != a.dim()) throw DimensionError("even_cover_translates: dimension mismatch");
  if (!s.contains(GroupElement::identity(s.dim())))
    throw PreconditionError("even_cover_translates: the shape must contain the identity");
  if (a.empty()) throw PreconditionError("even_cover_translates: empty target");

  EvenCoverWitness w;
  w.target = a;
  w.delta = delta;
  w.multiplicity_bound = s.size();
  w.invariance_ratio = invariance_ratio(a, set_product(s, inverse_set(s))).ratio;
  w.invariance_certified = w.invariance_ratio < delta;

  const PointIndex idx(a);
  for (const auto& g : a) {  // e in S, so Sg subset of A forces g in A
    bool inside = std::all_of(s.begin(), s.end(), [&](const GroupElement& x) { return idx.find(x + g) >= 0; });
    if (inside) {
      w.translations.push_back(g);
      w.members.push_back(s.translated(g));
      w.total_size += s.size();
    }
  }
  if (!w.invariance_certified && !is_even_cover(w.members, a, w.multiplicity_bound, delta)) {
    std::ostringstream os;
    os << "even_cover_translates: target is not (SS^-1, delta)-invariant (ratio " << w.invariance_ratio
       << ", delta " << delta << ") and the translates do not form a delta-even cover";
    throw PreconditionError(os.str());
  }
  return w;
}

SubcoverSelection select_disjoint_subcover(std::span<const FiniteSubset> family,
                                           const FiniteSubset& a, double eps, double delta) {
  check_epsilon(eps);
  if (a.empty()) throw PreconditionError("select_disjoint_subcover: empty target");
  const PointIndex idx(a);

  // smallest admissible M is the maximal pointwise multiplicity
  std::vector<std::size_t> mult(a.size(), 0);
  std::vector<std::vector<std::size_t>> as_idx(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (const auto& g : family[i]) {
      const auto p = idx.find(g);
      if (p < 0) throw PreconditionError("select_disjoint_subcover: member not inside the target");
      as_idx[i].push_back(static_cast<std::size_t>(p));
      ++mult[static_cast<std::size_t>(p)];
    }
  }
  const std::size_t m = mult.empty() ? 0 : *std::max_element(mult.begin(), mult.end());
  if (!is_even_cover(family, a, std::max<std::size_t>(m, 1), delta))
    throw PreconditionError("select_disjoint_subcover: family is not a delta-even cover of the target");

  std::vector<std::size_t> order(family.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (family[x].size() != family[y].size()) return family[x].size() > family[y].size();
    return lex_less(family[x], family[y]);
  });

  std::vector<char> claimed(a.size(), 0), admitted(family.size(), 0);
  SubcoverSelection out;
  out.witness.epsilon = eps;
  auto admit = [&](std::size_t i) {
    std::vector<GroupElement> core;
    for (auto p : as_idx[i])
      if (!claimed[p]) {
        claimed[p] = 1;
        core.push_back(a[p]);
      }
    admitted[i] = 1;
    out.admitted.push_back(i);
    out.witness.members.push_back(family[i]);
    out.witness.cores.emplace_back(a.dim(), std::move(core));
  };
  for (auto i : order) {
    if (std::none_of(as_idx[i].begin(), as_idx[i].end(), [&](std::size_t p) { return claimed[p] != 0; }))
      admit(i);
  }
  for (auto i : order) {
    if (admitted[i] || as_idx[i].empty()) continue;
    const auto free = static_cast<double>(
        std::count_if(as_idx[i].begin(), as_idx[i].end(), [&](std::size_t p) { return claimed[p] == 0; }));
    if (free > (1.0 - eps) * static_cast<double>(as_idx[i].size())) admit(i);
  }
  out.covered = static_cast<std::size_t>(std::count(claimed.begin(), claimed.end(), 1));
  if (static_cast<double>(out.covered) + 1e-9 < eps * (1.0 - delta) * static_cast<double>(a.size()))
    throw std::logic_error("select_disjoint_subcover: covering bound violated");
  return out;
}

TilingParameters choose_tiling_parameters(double eps) {
  if (!(eps > 0.0 && eps < 0.25)) throw PreconditionError("choose_tiling_parameters: epsilon must lie in (0,1/4)");
  TilingParameters p;
  double power = 1.0;
  while (!(power < eps)) {
    power *= 1.0 - eps / 2.0;
    ++p.k;
  }
  p.delta = eps / (4.0 * std::pow(6.0, p.k));
  return p;
}

QuasiTiling quasi_tile(std::span<const FiniteSubset> shapes, const FiniteSubset& target, double eps) {
  if (!(eps > 0.0 && eps < 0.25)) throw PreconditionError("quasi_tile: epsilon must lie in (0,1/4)");
  if (target.empty()) throw PreconditionError("quasi_tile: empty target");
  for (const auto& s : shapes) {
    if (s.empty()) throw PreconditionError("quasi_tile: empty shape");
    if (s.dim() != target.dim()) throw DimensionError("quasi_tile: dimension mismatch");
  }

  QuasiTiling t;
  t.shapes.assign(shapes.begin(), shapes.end());
  t.centers.assign(shapes.size(), FiniteSubset(target.dim()));
  t.admission_order.assign(shapes.size(), {});
  t.target = target;
  t.epsilon = eps;

  const PointIndex idx(target);
  std::vector<char> residual(target.size(), 1);
  std::vector<std::size_t> pts;

  for (std::size_t si = shapes.size(); si-- > 0;) {
    const auto& s = shapes[si];
    // candidate translations g with s0 + g in the residual, in lexicographic order
    std::vector<GroupElement> cands;
    std::vector<std::size_t> flat;  // point indices, |S| per candidate
    for (std::size_t p = 0; p < target.size(); ++p) {
      if (!residual[p]) continue;
      const GroupElement g = target[p] - s[0];
      bool ok = true;
      pts.clear();
      for (const auto& x : s) {
        const auto q = idx.find(x + g);
        if (q < 0 || !residual[static_cast<std::size_t>(q)]) {
          ok = false;
          break;
        }
        pts.push_back(static_cast<std::size_t>(q));
      }
      if (!ok) continue;
      cands.push_back(g);
      flat.insert(flat.end(), pts.begin(), pts.end());
    }
    const std::size_t n = s.size();
    std::vector<char> claimed(target.size(), 0), admitted(cands.size(), 0);
    auto points_of = [&](std::size_t c) {
      return std::span<const std::size_t>(flat.data() + c * n, n);
    };
    auto admit = [&](std::size_t c) {
      admitted[c] = 1;
      t.admission_order[si].push_back(cands[c]);
      for (auto q : points_of(c)) claimed[q] = 1;
    };
    for (std::size_t c = 0; c < cands.size(); ++c) {
      auto ps = points_of(c);
      if (std::none_of(ps.begin(), ps.end(), [&](std::size_t q) { return claimed[q] != 0; })) admit(c);
    }
    for (std::size_t c = 0; c < cands.size(); ++c) {
      if (admitted[c]) continue;
      auto ps = points_of(c);
      const auto free = static_cast<double>(
          std::count_if(ps.begin(), ps.end(), [&](std::size_t q) { return claimed[q] == 0; }));
      if (free > (1.0 - eps) * static_cast<double>(n)) admit(c);
    }
    for (std::size_t p = 0; p < target.size(); ++p)
      if (claimed[p]) residual[p] = 0;
    t.centers[si] = FiniteSubset(target.dim(), t.admission_order[si]);
  }

  const auto left = static_cast<double>(std::count(residual.begin(), residual.end(), 1));
  t.coverage = 1.0 - left / static_cast<double>(target.size());
  t.ok = verify_quasi_tiling(t).all();
  return t;
}

QuasiTilingCheck verify_quasi_tiling(const QuasiTiling& t) {
  QuasiTilingCheck r;
  std::vector<FiniteSubset> unions;
  for (std::size_t i = 0; i < t.shapes.size(); ++i) {
    const auto extent = set_product(t.shapes[i], t.centers[i]);
    if (!extent.is_subset_of(t.target)) r.inside_target = false;
    const auto& order = i < t.admission_order.size() && !t.admission_order[i].empty()
                            ? t.admission_order[i]
                            : t.centers[i].elements();
    if (!order.empty()) {
      std::vector<FiniteSubset> family;
      for (const auto& c : order) family.push_back(t.shapes[i].translated(c));
      if (!std::holds_alternative<DisjointFamilyWitness>(epsilon_disjoint_check(family, t.epsilon)))
        r.epsilon_disjoint = false;
    }
    for (const auto& u : unions)
      if (!set_intersection(u, extent).empty()) r.pairwise_disjoint = false;
    unions.push_back(extent);
  }
  FiniteSubset all(t.target.dim());
  for (const auto& u : unions) all = set_union(all, u);
  r.coverage = static_cast<double>(set_intersection(all, t.target).size()) /
               static_cast<double>(t.target.size());
  r.covers = r.coverage >= 1.0 - t.epsilon;
  return r;
}

std::optional<std::vector<std::size_t>> select_tiling_indices(const FolnerSequence& seq, int k,
                                                              double delta, std::size_t first,
                                                              std::size_t scan_bound) {
  if (k < 1 || first < 1) throw PreconditionError("select_tiling_indices: k and first index must be >= 1");
  std::vector<std::size_t> out{first};
  while (static_cast<int>(out.size()) < k) {
    const auto prev = folner(seq, out.back());
    const auto kk = set_product(prev, inverse_set(prev));
    std::optional<std::size_t> found;
    for (std::size_t n = out.back() + 1; n <= scan_bound && !found; ++n) {
      const auto cur = folner(seq, n);
      if (static_cast<double>(prev.size()) / static_cast<double>(cur.size()) < delta &&
          invariance_ratio(cur, kk).ratio < delta)
        found = n;
    }
    if (!found) return std::nullopt;
    out.push_back(*found);
  }
  return out;
}

}  // namespace locent
