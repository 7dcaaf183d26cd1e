#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace locent {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An element of the lattice Z^d, 1 <= d <= 3. The group law is addition.
class GroupElement {
 public:
  static constexpr int kMaxDim = 3;
  using Coord = std::int64_t;

  GroupElement() = default;
  explicit GroupElement(int dim);  // identity of Z^dim
  GroupElement(std::initializer_list<Coord> coords);
  explicit GroupElement(std::span<const Coord> coords);

  static GroupElement identity(int dim) { return GroupElement(dim); }

  int dim() const { return dim_; }
  Coord operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  Coord& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  std::vector<Coord> coords() const;
  bool is_identity() const;

  GroupElement inverse() const;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement& a, const GroupElement& b) {
    if (a.dim_ != b.dim_) return a.dim_ <=> b.dim_;
    return a.c_ <=> b.c_;
  }

 private:
  std::array<Coord, kMaxDim> c_{};
  int dim_ = 1;
};

/// Group law of Z^d: componentwise sum. Throws DimensionError on mismatch.
GroupElement multiply(const GroupElement& g, const GroupElement& h);
GroupElement operator+(const GroupElement& g, const GroupElement& h);
GroupElement operator-(const GroupElement& g, const GroupElement& h);

std::string to_string(const GroupElement& g);

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept {
    std::size_t h = static_cast<std::size_t>(g.dim());
    for (int i = 0; i < g.dim(); ++i)
      h = h * 0x9E3779B97F4A7C15ULL + static_cast<std::size_t>(g[i]) + (h >> 29);
    return h;
  }
};

/// Finite subset of Z^d kept in canonical lexicographic order without
/// duplicates. Iteration order is deterministic.
class FiniteSubset {
 public:
  explicit FiniteSubset(int dim = 1) : dim_(dim) {}
  FiniteSubset(int dim, std::vector<GroupElement> elements);

  static FiniteSubset interval(GroupElement::Coord lo, GroupElement::Coord hi);
  /// Box [lo_0,hi_0] x ... x [lo_{d-1},hi_{d-1}] (inclusive bounds).
  static FiniteSubset box(const GroupElement& lo, const GroupElement& hi);
  static FiniteSubset singleton(const GroupElement& g);

  int dim() const { return dim_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  bool contains(const GroupElement& g) const;
  /// Position of g in canonical order, or -1.
  std::ptrdiff_t index_of(const GroupElement& g) const;

  const std::vector<GroupElement>& elements() const { return elems_; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }
  const GroupElement& operator[](std::size_t i) const { return elems_[i]; }

  /// Right translate F g = {f + g}.
  FiniteSubset translated(const GroupElement& g) const;
  bool is_subset_of(const FiniteSubset& other) const;
  /// Componentwise min / max over the elements; requires non-empty.
  GroupElement lower_corner() const;
  GroupElement upper_corner() const;

  friend bool operator==(const FiniteSubset&, const FiniteSubset&) = default;

 private:
  std::vector<GroupElement> elems_;
  int dim_;
};

FiniteSubset set_union(const FiniteSubset& a, const FiniteSubset& b);
FiniteSubset set_intersection(const FiniteSubset& a, const FiniteSubset& b);
FiniteSubset set_difference(const FiniteSubset& a, const FiniteSubset& b);

/// K F = {k f : k in K, f in F}.
FiniteSubset set_product(const FiniteSubset& k, const FiniteSubset& f);
/// K^{-1}.
FiniteSubset inverse_set(const FiniteSubset& k);

/// B(A,K) = {g : Kg meets A and Kg meets G \ A}. Enumerated over the finite
/// superset K^{-1}A; the complement of A is never materialized.
FiniteSubset boundary(const FiniteSubset& a, const FiniteSubset& k);

struct InvarianceReport {
  std::size_t boundary_size = 0;
  double ratio = 0.0;
  bool satisfied(double delta) const { return ratio < delta; }
};

/// |B(A,K)| / |A|. A must be non-empty.
InvarianceReport invariance_ratio(const FiniteSubset& a, const FiniteSubset& k);

/// {g in F : Kg subset of F}.
FiniteSubset interior(const FiniteSubset& f, const FiniteSubset& k);

/// [K,eps]-invariance: |{g in F : Kg subset of F}| > (1 - eps)|F|.
bool bracket_invariant(const FiniteSubset& f, const FiniteSubset& k, double eps);

enum class FolnerKind { box, shifted_interval, custom };

/// A computable Folner sequence in Z^d.
///  - box: F_n = {0,...,n-1}^d
///  - shifted_interval (d = 1): F_n = {a_n,...,a_n+n-1} with a_n a polynomial
///    in n given by coefficients (constant term first)
///  - custom: explicit list of members, F_n = sets[n-1]
struct FolnerSequence {
  FolnerKind kind = FolnerKind::box;
  int dim = 1;
  std::vector<GroupElement::Coord> shift_poly;  // shifted_interval
  std::vector<FiniteSubset> sets;               // custom

  static FolnerSequence boxes(int dim) { return {FolnerKind::box, dim, {}, {}}; }
  static FolnerSequence shifted(std::vector<GroupElement::Coord> poly) {
    return {FolnerKind::shifted_interval, 1, std::move(poly), {}};
  }

  GroupElement::Coord shift(std::size_t n) const;
};

/// n-th member (n >= 1).
FiniteSubset folner(const FolnerSequence& seq, std::size_t n);

}  // namespace locent
