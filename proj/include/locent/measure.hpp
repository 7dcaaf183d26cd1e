#pragma once

// Invariant measures with closed-form cylinder masses, plus empirical
// measures averaged over a finite set of shifts.

#include <memory>
#include <optional>
#include <vector>

#include "locent/subshift.hpp"

namespace locent {

enum class MeasureKind { bernoulli, markov, periodic, convex, empirical };

const char* to_string(MeasureKind k);

/// Base points on a master window, averaged over shifts g in F:
/// mass(p) = sum_x w_x (1/|F|) sum_g [g x in p], with (g x)_h = x_{h+g}.
struct EmpiricalSpec {
  FiniteSubset window{1};
  std::vector<Pattern> base_points;  // each with shape == window
  std::vector<double> weights;       // empty means uniform
  FiniteSubset averaging_set{1};
};

class Measure {
 public:
  using Matrix = std::vector<std::vector<double>>;

  /// Product measure; probabilities indexed by alphabet symbol.
  static Measure bernoulli(Alphabet alphabet, std::vector<double> probs, int dim = 1);
  /// Stationary Markov chain (d = 1). The stationary vector is solved for
  /// unless given; either way pi P = pi is checked to 1e-12.
  static Measure markov(Alphabet alphabet, Matrix transition, std::optional<std::vector<double>> stationary = {});
  /// Uniform measure on the orbit of the periodic point repeating `word` (d = 1).
  static Measure periodic(Alphabet alphabet, std::span<const Symbol> word);
  /// Uniform measure on the orbit of the Z^d-periodic point whose
  /// fundamental domain is the box pattern `tile` with lower corner 0.
  static Measure periodic(Alphabet alphabet, const Pattern& tile);
  static Measure convex(std::vector<double> weights, std::vector<Measure> components);
  static Measure empirical(Alphabet alphabet, EmpiricalSpec spec);

  MeasureKind kind() const { return kind_; }
  const Alphabet& alphabet() const { return alphabet_; }
  int dim() const { return dim_; }
  bool ergodic() const { return ergodic_; }
  /// False only for empirical measures.
  bool invariant() const { return kind_ != MeasureKind::empirical; }

  double cylinder_mass(const Pattern& p) const;

  const std::vector<double>& probs() const { return probs_; }
  const Matrix& transition() const { return transition_; }
  const std::vector<double>& stationary() const { return probs_; }
  /// Period box and the distinct points of the orbit as box patterns.
  const std::vector<GroupElement::Coord>& periods() const { return periods_; }
  const std::vector<std::vector<Symbol>>& orbit() const { return orbit_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<Measure>& components() const { return components_; }
  const EmpiricalSpec& empirical_spec() const { return *spec_; }

  /// Entropy rate h_mu(X) relative to the symbol partition when known in
  /// closed form (bernoulli, markov, periodic, convex of those).
  std::optional<double> entropy_rate() const;

  bool same_description(const Measure& other) const;

 private:
  Measure() = default;
  double markov_mass(const Pattern& p) const;
  const Matrix& power(std::size_t gap) const;

  MeasureKind kind_ = MeasureKind::bernoulli;
  Alphabet alphabet_;
  int dim_ = 1;
  bool ergodic_ = true;
  std::vector<double> probs_;  // bernoulli probabilities or markov stationary vector
  Matrix transition_;
  std::vector<Matrix> powers_;  // P^1 .. P^kPowerCache
  std::vector<GroupElement::Coord> periods_;
  std::vector<std::vector<Symbol>> orbit_;
  std::vector<double> weights_;
  std::vector<Measure> components_;
  std::shared_ptr<const EmpiricalSpec> spec_;
};

Measure convex_combine(double a, const Measure& nu, const Measure& eta);

/// Mass of each word of a window language.
std::vector<double> word_masses(const Measure& mu, const WindowLanguage& lang);

/// Mass of U summed over the window words in U. The words come from the
/// support SFT when given, otherwise from the full shift on the measure's
/// alphabet. Throws WindowTooSmallError, and std::invalid_argument when the
/// window masses do not sum to 1 (measure not carried by the support).
double set_mass(const Measure& mu, const SymbolicSet& u, const FiniteSubset& window, const SFT* support = nullptr);

/// |mu(U) - mu(translate(U, g))| on a window holding both.
double invariance_defect(const Measure& mu, const SymbolicSet& u, const GroupElement& g,
                         const FiniteSubset& window, const SFT* support = nullptr);

}  // namespace locent
