#pragma once

// Ornstein-Weiss covering machinery: epsilon-disjoint families, delta-even
// covers, the greedy disjoint sub-collection, and epsilon-quasi-tilings of a
// finite target by right translates of a list of shapes.

#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "locent/group.hpp"

namespace locent {

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Cores B_i subset of A_i with |B_i| > (1 - eps)|A_i|, pairwise disjoint.
struct DisjointFamilyWitness {
  std::vector<FiniteSubset> members;
  std::vector<FiniteSubset> cores;
  double epsilon = 0.0;
};

/// First member whose greedy core is too small.
struct DisjointFailure {
  std::size_t index = 0;
  double ratio = 0.0;
};

using DisjointCheck = std::variant<DisjointFamilyWitness, DisjointFailure>;

/// Greedy core construction in family order: B_i = A_i minus the points
/// claimed by B_1..B_{i-1}. Success is sufficient, not necessary, for
/// epsilon-disjointness.
DisjointCheck epsilon_disjoint_check(std::span<const FiniteSubset> family, double eps);

struct EvenCoverWitness {
  std::vector<FiniteSubset> members;
  std::vector<GroupElement> translations;  // members[i] = S + translations[i]
  FiniteSubset target;
  std::size_t multiplicity_bound = 0;
  double delta = 0.0;
  std::size_t total_size = 0;
  /// |B(A, S S^{-1})| / |A|; below delta means the sufficient condition
  /// for the even-cover property was met.
  double invariance_ratio = 0.0;
  bool invariance_certified = false;
};

/// Checks both delta-even cover conditions with the given M.
bool is_even_cover(std::span<const FiniteSubset> members, const FiniteSubset& target, std::size_t m,
                   double delta);

/// Right translates {Sg : Sg subset of A} with M = |S|.
/// Throws PreconditionError when e_G is not in S, or when the family fails
/// to be a delta-even cover (the measured invariance ratio is in the message).
EvenCoverWitness even_cover_translates(const FiniteSubset& s, const FiniteSubset& a, double delta);

struct SubcoverSelection {
  DisjointFamilyWitness witness;
  std::vector<std::size_t> admitted;  // indices into the input family
  std::size_t covered = 0;            // |A cap union of admitted|
};

/// Greedy epsilon-disjoint sub-collection of a delta-even cover of A.
/// Candidates go in decreasing size then lexicographic order; a first pass
/// admits only sets disjoint from everything claimed so far, a second pass
/// admits any set whose unclaimed part exceeds (1 - eps) of it. The
/// result is maximal, hence covers at least eps (1 - delta)|A| points.
SubcoverSelection select_disjoint_subcover(std::span<const FiniteSubset> family,
                                           const FiniteSubset& a, double eps, double delta);

struct TilingParameters {
  int k = 0;
  double delta = 0.0;
};

/// Smallest k with (1 - eps/2)^k < eps; delta = eps / (4 * 6^k).
TilingParameters choose_tiling_parameters(double eps);

struct QuasiTiling {
  std::vector<FiniteSubset> shapes;
  std::vector<FiniteSubset> centers;
  /// centers of each shape in admission order (used by verification)
  std::vector<std::vector<GroupElement>> admission_order;
  FiniteSubset target;
  double epsilon = 0.0;
  double coverage = 0.0;
  bool ok = false;
};

struct QuasiTilingCheck {
  bool inside_target = true;
  bool epsilon_disjoint = true;
  bool pairwise_disjoint = true;
  double coverage = 0.0;
  bool covers = true;
  bool all() const { return inside_target && epsilon_disjoint && pairwise_disjoint && covers; }
};

/// Re-verifies the three quasi-tiling conditions with plain set arithmetic.
QuasiTilingCheck verify_quasi_tiling(const QuasiTiling& t);

/// Largest shape first: on the residual set, admit a greedy disjoint
/// sub-collection of translates of the current shape, remove their full
/// extents, continue with the next smaller shape. Insufficient coverage is
/// reported through ok = false.
QuasiTiling quasi_tile(std::span<const FiniteSubset> shapes, const FiniteSubset& target, double eps);

/// Scans indices N <= n_1 < ... < n_k <= scan_bound so that F_{n_{i+1}} is
/// (F_{n_i} F_{n_i}^{-1}, delta)-invariant and |F_{n_i}| / |F_{n_{i+1}}| < delta.
std::optional<std::vector<std::size_t>> select_tiling_indices(const FolnerSequence& seq, int k,
                                                              double delta, std::size_t first,
                                                              std::size_t scan_bound);

}  // namespace locent
