#pragma once

// Entropy pairs and tuples on SFTs: admissible covers built from point
// cylinders, topological and measure verdicts, lambda_n for the two
// solvable Pinsker regimes, the product formula and return-set witnesses.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "locent/entropy.hpp"

namespace locent {

enum class Verdict { positive, negative, undecided };
const char* to_string(Verdict v);

/// Points x_1..x_n given by their patterns on the cube [-r,r]^d.
struct TupleCandidate {
  std::vector<Pattern> points;
  int r = 0;
};

struct AdmissibleCover {
  Cover cover;
  /// element of `cover` excluding each point (equal points share one)
  std::vector<std::size_t> element_of_point;
};

/// U_i = complement of the i-th point cylinder, written as the union of the
/// single-site cylinders disagreeing with it. Throws on the diagonal, on
/// points outside the language or off the cube.
AdmissibleCover admissible_cover(const SFT& sft, const TupleCandidate& c);

/// Lexicographically least extension of every point to radius r + 1.
TupleCandidate extend_candidate(const SFT& sft, const TupleCandidate& c);

struct ResolutionVerdict {
  int r = 0;
  Verdict verdict = Verdict::undecided;
  double certified_upper = 0.0;
  double last_value = 0.0;
  std::string bound_source;
  bool searches_exact = true;
};

struct TupleReport {
  Verdict verdict = Verdict::undecided;
  std::vector<ResolutionVerdict> resolutions;
};

/// Verdict from the canonical admissible cover at every resolution c.r..r_max.
/// NEGATIVE at any resolution refutes the tuple (certified); POSITIVE needs
/// every resolution positive and is evidence only.
TupleReport is_entropy_tuple(const SFT& sft, const TupleCandidate& c, int r_max, std::size_t n_max,
                             double tol = 1e-3, const EntropyOptions& opts = {});

struct UpeReport {
  enum class Status { evidence, refuted, undecided } status = Status::undecided;
  std::size_t pairs = 0;
  std::size_t positive = 0;
  std::optional<TupleCandidate> witness;  // first NEGATIVE pair
};
const char* to_string(UpeReport::Status s);

/// All pairs of distinct words on [-r,r]^d.
UpeReport upe_check(const SFT& sft, int r, std::size_t n_max, double tol = 1e-3, const EntropyOptions& opts = {});

enum class LambdaVariant { product, diagonal };
const char* to_string(LambdaVariant v);

/// lambda_n(mu): the product of n copies of mu (trivial Pinsker algebra) or
/// mu pushed onto the diagonal (zero entropy).
struct LambdaN {
  LambdaVariant variant;
  Measure base;
  std::size_t n;

  /// lambda_n(A_1 x ... x A_n).
  double mass(const std::vector<SymbolicSet>& sets) const;
};

/// Bernoulli and mixing Markov measures give the product variant, periodic
/// measures the diagonal one; anything else throws std::invalid_argument.
LambdaN lambda_n(const Measure& mu, std::size_t n);

struct MeasureTupleReport {
  double lambda_mass = 0.0;
  EntropyEstimate h_minus;
  double certified_upper = 0.0;  // least of the h_mu^- and h_mu cover bounds
  bool lambda_positive = false;
  Verdict entropy = Verdict::undecided;
  bool degenerate = false;  // some U_i = X
  bool agree = true;
};

/// Both sides of the equivalence h_mu(G,U) > 0 <=> lambda_n(prod U_i^c) > 0.
MeasureTupleReport measure_tuple_check(const SFT& sft, const Measure& mu, const Cover& u, const FolnerSequence& seq,
                                       std::size_t n_max, double tol = 1e-3, int refinement_depth = 0,
                                       const EntropyOptions& opts = {});

struct ProductCase {
  TupleCandidate candidate;
  Verdict first = Verdict::undecided;   // factor 1 pair verdict (diagonal: in the supported diagonal)
  Verdict second = Verdict::undecided;
  bool first_diagonal = false;
  bool second_diagonal = false;
  Verdict predicted = Verdict::undecided;
  Verdict observed = Verdict::undecided;
};

struct ProductReport {
  std::vector<ProductCase> cases;
  std::size_t decided = 0;
  std::size_t agreements = 0;
  std::size_t disagreements = 0;
};

/// Pair candidates on product(sft1, sft2): factor verdicts, the predicted
/// product verdict E_2 x (E_2 u D^S) u (E_2 u D^S) x E_2, and the observed one.
ProductReport product_tuple_check(const SFT& sft1, const SFT& sft2, const std::vector<TupleCandidate>& candidates,
                                  std::size_t n_max, double tol = 1e-3, const EntropyOptions& opts = {});

struct PairSeparation {
  std::size_t count = 0;       // N of the join of g_i^{-1}{U_1^c, U_2^c}
  bool bound_exceeded = false; // count > m + 1
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // j_1 < j_2, 0-based
};

/// Join of the translates of {U_1^c, U_2^c} along g_1..g_m; when its
/// subcover count exceeds m + 1, indices with U_1 cap g_{j1} g_{j2}^{-1} U_2 nonempty.
PairSeparation pair_cover_separation(const SFT& sft, const SymbolicSet& u1, const SymbolicSet& u2,
                                     const std::vector<GroupElement>& g, std::size_t node_budget = kDefaultNodeBudget);

}  // namespace locent
