#pragma once

// Subshifts of finite type over A^{Z^d}, finite-window languages, and
// cylinder-union sets with their covers, joins and translates.
//
// Shift convention: (g x)_h = x_{h g}. translate(U, g) = {x : g x in U}
// moves every cylinder shape by +g.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "locent/group.hpp"

namespace locent {

using Symbol = std::uint8_t;

class EmptyLanguageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class WindowTooSmallError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);
  static Alphabet binary() { return Alphabet({"0", "1"}); }

  std::size_t size() const { return symbols_.size(); }
  const std::string& name(Symbol s) const { return symbols_.at(s); }
  Symbol index_of(const std::string& token) const;
  const std::vector<std::string>& symbols() const { return symbols_; }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> symbols_;
};

/// Assignment of symbols to a finite shape, aligned with the shape's
/// canonical order.
struct Pattern {
  FiniteSubset shape{1};
  std::vector<Symbol> symbols;

  Pattern() = default;
  Pattern(FiniteSubset shape, std::vector<Symbol> symbols);
  static Pattern empty(int dim) { return Pattern(FiniteSubset(dim), {}); }
  /// d = 1 word placed at offset..offset+len-1.
  static Pattern word(std::span<const Symbol> w, GroupElement::Coord offset = 0);

  int dim() const { return shape.dim(); }
  std::optional<Symbol> at(const GroupElement& g) const;
  Pattern translated(const GroupElement& g) const;
  /// Restriction to a sub-shape (must be contained in the shape).
  Pattern restricted(const FiniteSubset& sub) const;

  friend bool operator==(const Pattern&, const Pattern&) = default;
  friend bool operator<(const Pattern& a, const Pattern& b);
};

/// Union of two patterns when they agree on the overlap.
std::optional<Pattern> merge(const Pattern& a, const Pattern& b);

struct TransferGraph;

class SFT {
 public:
  SFT(Alphabet alphabet, int dim, std::vector<Pattern> forbidden);

  static SFT full_shift(Alphabet alphabet, int dim = 1);
  /// Binary shift forbidding the word 11.
  static SFT golden_mean();
  /// The orbit closure of the bi-infinite periodic word ...www...; d = 1.
  static SFT periodic_orbit(Alphabet alphabet, std::span<const Symbol> word);
  /// X_1 x X_2 over the pair alphabet "a|b"; records both factor projections.
  static SFT product(const SFT& a, const SFT& b);

  const Alphabet& alphabet() const { return alphabet_; }
  int dim() const { return dim_; }
  const std::vector<Pattern>& forbidden() const { return forbidden_; }
  /// Symbol maps onto factor alphabets (empty unless built by product()).
  const std::vector<std::vector<Symbol>>& projections() const { return projections_; }
  const std::vector<SFT>& factors() const { return factors_; }
  /// Whether some invariant measure has full support (metadata; true for
  /// irreducible d = 1 SFTs such as the built-in constructors).
  bool fully_supported() const { return fully_supported_; }
  void set_fully_supported(bool v) { fully_supported_ = v; }

  /// Largest extent of a forbidden pattern along any axis (0 if none).
  int memory() const;
  /// Whether the pattern avoids every forbidden pattern placed fully inside its shape.
  bool locally_admissible(const Pattern& p) const;

  /// d = 1 transfer graph on essential (L-1)-blocks.
  const TransferGraph& graph() const;

 private:
  Alphabet alphabet_;
  int dim_;
  std::vector<Pattern> forbidden_;
  std::vector<std::vector<Symbol>> projections_;
  std::vector<SFT> factors_;
  bool fully_supported_ = true;
  std::shared_ptr<const TransferGraph> graph_;  // built eagerly for d = 1
};

/// Vertices: locally admissible words of length block-1 that extend
/// bi-infinitely; edges: admissible words of length block.
struct TransferGraph {
  int block = 2;
  std::vector<std::vector<Symbol>> states;         // lexicographic
  std::vector<std::vector<std::pair<Symbol, std::size_t>>> next;  // (symbol, target)
  bool empty() const { return states.empty(); }
};

/// Patterns of the SFT on a finite window, rows in lexicographic order of
/// the symbol vectors (canonical shape order).
class WindowLanguage {
 public:
  WindowLanguage(FiniteSubset window, std::size_t alphabet_size, std::vector<Symbol> data, bool exact);

  const FiniteSubset& window() const { return window_; }
  std::size_t size() const { return count_; }
  std::size_t width() const { return window_.size(); }
  bool exact() const { return exact_; }
  std::size_t alphabet_size() const { return alphabet_size_; }
  std::span<const Symbol> word(std::size_t i) const {
    return {data_.data() + i * width(), width()};
  }
  Pattern pattern(std::size_t i) const;
  /// Row index of a full-window word, if present.
  std::optional<std::size_t> find(std::span<const Symbol> w) const;
  /// Column of each shape element inside the window; throws WindowTooSmallError.
  std::vector<std::size_t> columns(const FiniteSubset& shape) const;

 private:
  FiniteSubset window_;
  std::size_t alphabet_size_;
  std::vector<Symbol> data_;
  std::size_t count_;
  bool exact_;
};

/// d = 1: globally admissible words (exact). d >= 2: patterns extendable to
/// a locally admissible pattern on the window padded by `margin` (an
/// over-count, flagged inexact). Throws EmptyLanguageError.
WindowLanguage language(const SFT& sft, const FiniteSubset& window, int margin = 1);

/// Finite union of cylinder sets. No cylinders is the empty set; a cylinder
/// with empty shape is the whole space.
struct SymbolicSet {
  int dim = 1;
  std::vector<Pattern> cylinders;

  static SymbolicSet full(int dim) { return {dim, {Pattern::empty(dim)}}; }
  static SymbolicSet empty(int dim) { return {dim, {}}; }
  static SymbolicSet cylinder(Pattern p) {
    const int d = p.dim();
    return {d, {std::move(p)}};
  }
  /// Single-site cylinder [symbol at g].
  static SymbolicSet at(const GroupElement& g, Symbol s);

  bool is_syntactically_full() const;
  FiniteSubset support() const;
  /// Sorted, duplicate-free cylinder list.
  void normalize();

  friend bool operator==(const SymbolicSet&, const SymbolicSet&) = default;
};

/// Finite family of cylinder-union sets. Used for covers and partitions.
struct Cover {
  int dim = 1;
  std::vector<SymbolicSet> elements;
  bool open = true;

  static Cover trivial(int dim) { return {dim, {SymbolicSet::full(dim)}, true}; }
  /// {[a at g] : a in alphabet}.
  static Cover symbol_partition(const Alphabet& alphabet, const GroupElement& g);
  static Cover symbol_partition(const Alphabet& alphabet, int dim = 1) {
    return symbol_partition(alphabet, GroupElement::identity(dim));
  }

  std::size_t size() const { return elements.size(); }
  FiniteSubset support() const;
};
using Partition = Cover;

SymbolicSet translate(const SymbolicSet& u, const GroupElement& g);
Cover translate(const Cover& u, const GroupElement& g);

/// Cylinder-wise intersection (syntactic; may denote the empty set).
SymbolicSet intersect(const SymbolicSet& a, const SymbolicSet& b);
/// Whether the set meets the SFT (decided on the languages of the cylinder shapes).
bool is_nonempty(const SFT& sft, const SymbolicSet& u);
/// Set equality / containment decided on a window containing both supports.
bool same_set(const SFT& sft, const SymbolicSet& a, const SymbolicSet& b);
/// Windowed complement: the union of window words outside U.
SymbolicSet complement(const SFT& sft, const SymbolicSet& u, const FiniteSubset& window);
bool contains(const SymbolicSet& u, const Pattern& full_window_word);

/// All n-wise intersections, empties dropped, duplicates merged.
Cover join(const SFT& sft, std::span<const Cover> covers);
/// U_F = join of translate(U, g) over g in F; U_empty = {X}.
Cover cover_pullback(const SFT& sft, const Cover& u, const FiniteSubset& f);
/// Non-empty Boolean atoms of U on the window, each a union of window words.
Partition atoms(const SFT& sft, const Cover& u, const FiniteSubset& window);
/// Whether the elements cover the window language.
bool is_cover(const SFT& sft, const Cover& u, const FiniteSubset& window);
/// Cover property plus pairwise disjointness on the window.
bool is_partition(const SFT& sft, const Cover& u, const FiniteSubset& window);
/// Every element of `fine` lies inside some element of `coarse` (on the window).
bool refines(const SFT& sft, const Cover& fine, const Cover& coarse, const FiniteSubset& window);

/// N(U,V) restricted to the probe: {g : U cap g^{-1} V != empty}.
FiniteSubset return_set(const SFT& sft, const SymbolicSet& u, const SymbolicSet& v,
                        const FiniteSubset& probe);

/// Radius-r cube [-r,r]^d.
FiniteSubset cube(int dim, int r);
/// d = 1: extend a globally admissible word on [a,b] to [a-left, b+right]
/// choosing the lexicographically least admissible symbols.
Pattern extend_word(const SFT& sft, const Pattern& word, int left, int right);

/// log of the spectral radius of the transfer graph (d = 1), i.e. the
/// topological entropy of the SFT.
double sft_entropy(const SFT& sft);

}  // namespace locent
