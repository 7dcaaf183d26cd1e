#pragma once

// Entropy of covers and partitions on SFTs, natural logarithm throughout.
//
// Every windowed quantity on U_F is computed on the window F + supp(U):
// elements of U_F become word-index sets of that window's language.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "locent/measure.hpp"
#include "locent/setcover.hpp"
#include "locent/subshift.hpp"
#include "locent/window.hpp"

namespace locent {

/// phi(t) = -t log t, phi(0) = 0.
double phi(double t);

class NotACoverError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct EntropyOptions {
  std::size_t node_budget = kDefaultNodeBudget;
  /// work units (element scans) for the exact static-entropy search
  std::size_t assignment_budget = 20'000'000;
  /// exhaustive assignment-partition enumeration below this count
  std::size_t candidate_budget = 256;
  /// longest name block used by the name-graph bound
  int name_block_max = 4;
  /// worker threads for per-window evaluations (0: hardware concurrency)
  unsigned threads = 0;
  /// use structural upper bounds besides the running infimum
  bool structural_bounds = true;
};

struct WindowValue {
  std::size_t n = 0;
  std::size_t size = 0;  // |F_n|
  double value = 0.0;    // H(F_n) / |F_n|
  double raw = 0.0;      // H(F_n)
  bool exact = true;     // search finished within budget
  std::size_t nodes = 0;
  double seconds = 0.0;
};

struct EntropyEstimate {
  std::vector<WindowValue> values;
  /// min over evaluated windows of value
  double running_infimum = 0.0;
  /// min of the running infimum and any structural bound
  double certified_upper = 0.0;
  std::string bound_source = "running_infimum";
  /// last value
  double extrapolated = 0.0;
  /// closed form applies
  bool exact = false;
  /// all searches finished within budget
  bool searches_exact = true;
  /// d >= 2 language (locally admissible over-count)
  bool approximate_language = false;
  std::string phi_note = "phi(t) = -t log t, natural log";
};

// ------------------------------------------------------------ windows

/// F + supp(U).
FiniteSubset pullback_window(const Cover& u, const FiniteSubset& f);
/// Elements of U_F on the language of a window containing F + supp(U).
/// With maximal_only, members contained in others are dropped.
WindowFamily pullback_family(const Cover& u, const FiniteSubset& f, const WindowLanguage& lang, bool maximal_only);

// ------------------------------------------------------------ topological

struct Subcover {
  std::size_t size = 0;
  bool exact = true;
  std::size_t nodes = 0;
  std::vector<std::size_t> witness;  // element indices of U
};

/// N(U) on the window; H(U) = log N(U).
Subcover min_subcover(const SFT& sft, const Cover& u, const FiniteSubset& window,
                      std::size_t node_budget = kDefaultNodeBudget);

/// N(U_F).
Subcover pullback_subcover(const SFT& sft, const Cover& u, const FiniteSubset& f,
                           std::size_t node_budget = kDefaultNodeBudget);

EntropyEstimate h_top(const SFT& sft, const Cover& u, const FolnerSequence& seq, std::size_t n_max,
                      const EntropyOptions& opts = {});

/// d = 1: log of the spectral radius of the graph of alpha-names of length
/// k (edges: names of length k + 1). An upper bound for h_top(G, alpha).
double name_graph_bound(const SFT& sft, const Partition& alpha, int k);

/// d = 1: upper bound for h_top(G, U) from partitions alpha finer than U
/// (U itself when it is a partition, otherwise assignment partitions of
/// its atoms) and from h_top(X). Returns the bound and its source.
std::pair<double, std::string> structural_top_bound(const SFT& sft, const Cover& u, const EntropyOptions& opts = {});

// ------------------------------------------------------------ measure

double shannon(const Measure& mu, const Partition& alpha, const FiniteSubset& window, const SFT* support = nullptr);
double conditional(const Measure& mu, const Partition& alpha, const Partition& beta, const FiniteSubset& window,
                   const SFT* support = nullptr);

struct StaticCoverEntropy {
  double value = 0.0;
  bool exact = true;
  /// element index of U assigned to each window word
  std::vector<std::size_t> assignment;
  Partition minimizer;
};

/// min H_mu(beta) over partitions beta between the atoms of U and U.
StaticCoverEntropy static_cover_entropy(const Measure& mu, const Cover& u, const FiniteSubset& window,
                                        const SFT* support = nullptr, const EntropyOptions& opts = {});

/// Same on index families: `family` over items with the given masses.
/// Returns the value, exactness and the element chosen per item.
struct FamilyStaticEntropy {
  double value = 0.0;
  bool exact = true;
  std::vector<std::size_t> choice;  // per item, index into family.sets
};
FamilyStaticEntropy static_entropy(const WindowFamily& family, std::span<const double> mass,
                                   std::size_t assignment_budget = 20'000'000);

/// H_mu of a partition given per item labels.
double label_entropy(std::span<const std::uint32_t> labels, std::span<const double> mass);

EntropyEstimate h_mu_partition(const SFT& sft, const Measure& mu, const Partition& alpha, const FolnerSequence& seq,
                               std::size_t n_max, const EntropyOptions& opts = {});
EntropyEstimate h_mu_minus_cover(const SFT& sft, const Measure& mu, const Cover& u, const FolnerSequence& seq,
                                 std::size_t n_max, const EntropyOptions& opts = {});

struct CoverEntropyEstimate {
  EntropyEstimate estimate;
  Partition best;               // partition finer than U with the least certified bound
  std::size_t candidates = 0;   // partitions evaluated
};

/// Upper bound for h_mu(G, U) = inf over partitions alpha finer than U of
/// h_mu(G, alpha), minimized over assignment partitions of the atoms of
/// U_{[-r,r]^d}, each atom sent to an element of U containing it.
CoverEntropyEstimate h_mu_cover(const SFT& sft, const Measure& mu, const Cover& u, const FolnerSequence& seq,
                                std::size_t n_max, int refinement_depth, const EntropyOptions& opts = {});

struct KatokCount {
  FiniteSubset f;
  double a = 0.0;
  std::size_t count = 0;
  bool exact = true;
  std::vector<std::size_t> subfamily;  // indices into the maximal members of U_F
  double mass = 0.0;                   // mass of their union
};

KatokCount katok_b(const SFT& sft, const Measure& mu, const FiniteSubset& f, double a, const Cover& u,
                   std::size_t node_budget = kDefaultNodeBudget);

struct KatokWindow {
  std::size_t n = 0;
  std::size_t b = 0;
  double value = 0.0;       // log b / |F|
  double h_static = 0.0;    // H_mu(U_F)
  double weiss_rhs = 0.0;   // log b + (1 - a)|F| log N(U) + log 2
  bool weiss_ok = true;
};

struct KatokEstimate {
  EntropyEstimate estimate;
  std::vector<KatokWindow> windows;
  bool weiss_all = true;
};

KatokEstimate katok_entropy(const SFT& sft, const Measure& mu, const Cover& u, const FolnerSequence& seq,
                            std::size_t n_max, double epsilon, const EntropyOptions& opts = {});

struct SeparatedSet {
  FiniteSubset window;
  std::vector<Pattern> points;
  std::size_t n_cover = 0;  // N(U_F)
  std::size_t k = 0;        // number of partitions
  double lower_bound = 0.0; // N(U_F) / K
  bool bound_holds = true;
  bool at_most_one_per_atom = true;
};

/// Greedy separated set on the window F + supports: take the least word of
/// the residual, remove every word sharing an (alpha_l)_F atom with it.
SeparatedSet separated_set(const SFT& sft, const Cover& u, std::span<const Partition> alphas, const FiniteSubset& f);

struct VpMeasureResult {
  std::string label;
  EntropyEstimate estimate;
};

struct VpReport {
  EntropyEstimate top;
  std::vector<VpMeasureResult> measures;
  double max_measure_upper = 0.0;
  std::size_t argmax = 0;
  double gap = 0.0;  // top.certified_upper - max_measure_upper
  bool one_sided_ok = true;
};

VpReport vp_check(const SFT& sft, const Cover& u, std::span<const Measure> measures, const FolnerSequence& seq,
                  std::size_t n_max, int refinement_depth = 0, const EntropyOptions& opts = {});

/// d = 1: the empirical measure over the separated set for F_n, base
/// points extended by `pad` cells on the right (lexicographically least
/// admissible symbols) so shifted cylinder shapes fit.
Measure empirical_vp_measure(const SFT& sft, const Cover& u, std::size_t n, std::span<const Partition> partitions,
                             const FolnerSequence& seq, int pad = -1);

/// Whether U consists of the cylinders [a at g], a in the alphabet, for one g.
bool is_symbol_partition(const Cover& u, const Alphabet& alphabet);

}  // namespace locent
