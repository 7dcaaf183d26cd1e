#include "locent/group.hpp"

#include <algorithm>
#include <sstream>

namespace locent {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > GroupElement::kMaxDim)
    throw DimensionError("dimension must be in [1," + std::to_string(GroupElement::kMaxDim) +
                         "], got " + std::to_string(dim));
}

void require_same_dim(int a, int b) {
  if (a != b)
    throw DimensionError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

GroupElement::GroupElement(int dim) : dim_(dim) { check_dim(dim); }

GroupElement::GroupElement(std::initializer_list<Coord> coords)
    : GroupElement(std::span<const Coord>(coords.begin(), coords.size())) {}

GroupElement::GroupElement(std::span<const Coord> coords) : dim_(static_cast<int>(coords.size())) {
  check_dim(dim_);
  std::copy(coords.begin(), coords.end(), c_.begin());
}

std::vector<GroupElement::Coord> GroupElement::coords() const {
  return {c_.begin(), c_.begin() + dim_};
}

bool GroupElement::is_identity() const {
  return std::all_of(c_.begin(), c_.begin() + dim_, [](Coord x) { return x == 0; });
}

GroupElement GroupElement::inverse() const {
  GroupElement r(dim_);
  for (int i = 0; i < dim_; ++i) r[i] = -(*this)[i];
  return r;
}

GroupElement multiply(const GroupElement& g, const GroupElement& h) {
  require_same_dim(g.dim(), h.dim());
  GroupElement r(g.dim());
  for (int i = 0; i < g.dim(); ++i) r[i] = g[i] + h[i];
  return r;
}

GroupElement operator+(const GroupElement& g, const GroupElement& h) { return multiply(g, h); }
GroupElement operator-(const GroupElement& g, const GroupElement& h) {
  return multiply(g, h.inverse());
}

std::string to_string(const GroupElement& g) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < g.dim(); ++i) os << (i ? "," : "") << g[i];
  os << ')';
  return os.str();
}

FiniteSubset::FiniteSubset(int dim, std::vector<GroupElement> elements)
    : elems_(std::move(elements)), dim_(dim) {
  check_dim(dim);
  for (const auto& e : elems_) require_same_dim(dim, e.dim());
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

FiniteSubset FiniteSubset::interval(GroupElement::Coord lo, GroupElement::Coord hi) {
  std::vector<GroupElement> v;
  for (auto x = lo; x <= hi; ++x) v.push_back(GroupElement{x});
  FiniteSubset r(1);
  r.elems_ = std::move(v);
  return r;
}

FiniteSubset FiniteSubset::box(const GroupElement& lo, const GroupElement& hi) {
  require_same_dim(lo.dim(), hi.dim());
  const int d = lo.dim();
  FiniteSubset r(d);
  for (int i = 0; i < d; ++i)
    if (hi[i] < lo[i]) return r;
  GroupElement cur = lo;
  // odometer in lexicographic order (last coordinate fastest)
  while (true) {
    r.elems_.push_back(cur);
    int i = d - 1;
    while (i >= 0 && cur[i] == hi[i]) {
      cur[i] = lo[i];
      --i;
    }
    if (i < 0) break;
    ++cur[i];
  }
  return r;
}

FiniteSubset FiniteSubset::singleton(const GroupElement& g) { return FiniteSubset(g.dim(), {g}); }

bool FiniteSubset::contains(const GroupElement& g) const {
  return std::binary_search(elems_.begin(), elems_.end(), g);
}

std::ptrdiff_t FiniteSubset::index_of(const GroupElement& g) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), g);
  if (it == elems_.end() || *it != g) return -1;
  return it - elems_.begin();
}

FiniteSubset FiniteSubset::translated(const GroupElement& g) const {
  require_same_dim(dim_, g.dim());
  FiniteSubset r(dim_);
  r.elems_.reserve(elems_.size());
  for (const auto& e : elems_) r.elems_.push_back(e + g);  // order preserved
  return r;
}

bool FiniteSubset::is_subset_of(const FiniteSubset& other) const {
  return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
}

GroupElement FiniteSubset::lower_corner() const {
  if (elems_.empty()) throw std::invalid_argument("lower_corner of empty set");
  GroupElement r = elems_.front();
  for (const auto& e : elems_)
    for (int i = 0; i < dim_; ++i) r[i] = std::min(r[i], e[i]);
  return r;
}

GroupElement FiniteSubset::upper_corner() const {
  if (elems_.empty()) throw std::invalid_argument("upper_corner of empty set");
  GroupElement r = elems_.front();
  for (const auto& e : elems_)
    for (int i = 0; i < dim_; ++i) r[i] = std::max(r[i], e[i]);
  return r;
}

FiniteSubset set_union(const FiniteSubset& a, const FiniteSubset& b) {
  require_same_dim(a.dim(), b.dim());
  std::vector<GroupElement> v;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(v));
  return FiniteSubset(a.dim(), std::move(v));
}

FiniteSubset set_intersection(const FiniteSubset& a, const FiniteSubset& b) {
  require_same_dim(a.dim(), b.dim());
  std::vector<GroupElement> v;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(v));
  return FiniteSubset(a.dim(), std::move(v));
}

FiniteSubset set_difference(const FiniteSubset& a, const FiniteSubset& b) {
  require_same_dim(a.dim(), b.dim());
  std::vector<GroupElement> v;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(v));
  return FiniteSubset(a.dim(), std::move(v));
}

FiniteSubset set_product(const FiniteSubset& k, const FiniteSubset& f) {
  require_same_dim(k.dim(), f.dim());
  std::vector<GroupElement> v;
  v.reserve(k.size() * f.size());
  for (const auto& x : k)
    for (const auto& y : f) v.push_back(x + y);
  return FiniteSubset(k.dim(), std::move(v));
}

FiniteSubset inverse_set(const FiniteSubset& k) {
  std::vector<GroupElement> v;
  v.reserve(k.size());
  for (const auto& x : k) v.push_back(x.inverse());
  return FiniteSubset(k.dim(), std::move(v));
}

FiniteSubset boundary(const FiniteSubset& a, const FiniteSubset& k) {
  require_same_dim(a.dim(), k.dim());
  std::vector<GroupElement> out;
  for (const auto& g : set_product(inverse_set(k), a)) {
    bool inside = false, outside = false;
    for (const auto& x : k) {
      if (a.contains(x + g))
        inside = true;
      else
        outside = true;
      if (inside && outside) break;
    }
    if (inside && outside) out.push_back(g);
  }
  return FiniteSubset(a.dim(), std::move(out));
}

InvarianceReport invariance_ratio(const FiniteSubset& a, const FiniteSubset& k) {
  if (a.empty()) throw std::invalid_argument("invariance_ratio: A must be non-empty");
  InvarianceReport r;
  r.boundary_size = boundary(a, k).size();
  r.ratio = static_cast<double>(r.boundary_size) / static_cast<double>(a.size());
  return r;
}

FiniteSubset interior(const FiniteSubset& f, const FiniteSubset& k) {
  require_same_dim(f.dim(), k.dim());
  std::vector<GroupElement> out;
  for (const auto& g : f) {
    bool ok = std::all_of(k.begin(), k.end(), [&](const GroupElement& x) { return f.contains(x + g); });
    if (ok) out.push_back(g);
  }
  return FiniteSubset(f.dim(), std::move(out));
}

bool bracket_invariant(const FiniteSubset& f, const FiniteSubset& k, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("bracket_invariant: eps must be in (0,1)");
  const auto count = static_cast<double>(interior(f, k).size());
  return count > (1.0 - eps) * static_cast<double>(f.size());
}

GroupElement::Coord FolnerSequence::shift(std::size_t n) const {
  GroupElement::Coord acc = 0, p = 1;
  for (auto c : shift_poly) {
    acc += c * p;
    p *= static_cast<GroupElement::Coord>(n);
  }
  return acc;
}

FiniteSubset folner(const FolnerSequence& seq, std::size_t n) {
  if (n < 1) throw std::invalid_argument("folner: index must be >= 1");
  const auto len = static_cast<GroupElement::Coord>(n);
  switch (seq.kind) {
    case FolnerKind::box: {
      GroupElement lo(seq.dim), hi(seq.dim);
      for (int i = 0; i < seq.dim; ++i) hi[i] = len - 1;
      return FiniteSubset::box(lo, hi);
    }
    case FolnerKind::shifted_interval: {
      if (seq.dim != 1) throw DimensionError("shifted_interval sequences live in Z");
      const auto a = seq.shift(n);
      return FiniteSubset::interval(a, a + len - 1);
    }
    case FolnerKind::custom:
      if (n > seq.sets.size())
        throw std::out_of_range("custom Folner sequence has only " + std::to_string(seq.sets.size()) +
                                " members");
      return seq.sets[n - 1];
  }
  throw std::invalid_argument("folner: unknown kind");
}

}  // namespace locent
