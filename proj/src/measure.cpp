#include "locent/measure.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "locent/window.hpp"

namespace locent {

namespace {

constexpr double kTol = 1e-12;
constexpr std::size_t kPowerCache = 64;

using Matrix = Measure::Matrix;

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix c(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

void check_probability_vector(const std::vector<double>& p, const char* what) {
  double s = 0;
  for (double x : p) {
    if (!(x >= 0.0) || x > 1.0) throw std::invalid_argument(std::string(what) + ": entries must lie in [0,1]");
    s += x;
  }
  if (std::abs(s - 1.0) > kTol) throw std::invalid_argument(std::string(what) + ": entries must sum to 1");
}

double phi(double p) { return p > 0.0 ? -p * std::log(p) : 0.0; }

std::vector<double> solve_stationary(const Matrix& p) {
  const auto n = static_cast<Eigen::Index>(p.size());
  // (P^T - I) pi = 0 with the last equation replaced by sum(pi) = 1
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      a(i, j) = p[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] - (i == j ? 1.0 : 0.0);
  a.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible())
    throw std::invalid_argument("markov: stationary vector is not unique; supply it explicitly");
  Eigen::VectorXd x = lu.solve(b);
  std::vector<double> pi(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) pi[static_cast<std::size_t>(i)] = std::abs(x(i)) < 1e-15 ? 0.0 : x(i);
  return pi;
}

bool primitive(const Matrix& p) {
  const std::size_t n = p.size();
  Matrix b(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b[i][j] = p[i][j] > 0 ? 1.0 : 0.0;
  Matrix acc = b;
  // Wielandt: primitive iff B^{(n-1)^2+1} > 0
  for (std::size_t k = 1; k < (n - 1) * (n - 1) + 1; ++k) {
    acc = multiply(acc, b);
    for (auto& row : acc)
      for (auto& x : row) x = x > 0 ? 1.0 : 0.0;
  }
  for (const auto& row : acc)
    for (double x : row)
      if (x == 0.0) return false;
  return true;
}

std::size_t torus_index(const GroupElement& h, const std::vector<GroupElement::Coord>& periods) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < periods.size(); ++i) {
    auto p = periods[i];
    auto r = ((h[static_cast<int>(i)] % p) + p) % p;
    idx = idx * static_cast<std::size_t>(p) + static_cast<std::size_t>(r);
  }
  return idx;
}

}  // namespace

const char* to_string(MeasureKind k) {
  switch (k) {
    case MeasureKind::bernoulli: return "bernoulli";
    case MeasureKind::markov: return "markov";
    case MeasureKind::periodic: return "periodic";
    case MeasureKind::convex: return "convex";
    case MeasureKind::empirical: return "empirical";
  }
  return "?";
}

Measure Measure::bernoulli(Alphabet alphabet, std::vector<double> probs, int dim) {
  if (dim < 1 || dim > GroupElement::kMaxDim) throw DimensionError("measure dimension must be 1..3");
  if (probs.size() != alphabet.size()) throw std::invalid_argument("bernoulli: one probability per symbol");
  check_probability_vector(probs, "bernoulli");
  Measure m;
  m.kind_ = MeasureKind::bernoulli;
  m.alphabet_ = std::move(alphabet);
  m.dim_ = dim;
  m.probs_ = std::move(probs);
  m.ergodic_ = true;
  return m;
}

Measure Measure::markov(Alphabet alphabet, Matrix transition, std::optional<std::vector<double>> stationary) {
  const std::size_t n = alphabet.size();
  if (transition.size() != n) throw std::invalid_argument("markov: matrix must be |A| x |A|");
  for (const auto& row : transition) {
    if (row.size() != n) throw std::invalid_argument("markov: matrix must be |A| x |A|");
    check_probability_vector(row, "markov row");
  }
  std::vector<double> pi = stationary ? *stationary : solve_stationary(transition);
  if (pi.size() != n) throw std::invalid_argument("markov: stationary vector size mismatch");
  check_probability_vector(pi, "markov stationary vector");
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += pi[i] * transition[i][j];
    if (std::abs(s - pi[j]) > kTol) throw std::invalid_argument("markov: pi P != pi");
  }
  Measure m;
  m.kind_ = MeasureKind::markov;
  m.alphabet_ = std::move(alphabet);
  m.dim_ = 1;
  m.probs_ = std::move(pi);
  m.transition_ = std::move(transition);
  m.ergodic_ = primitive(m.transition_);
  m.powers_.push_back(m.transition_);
  for (std::size_t k = 1; k < kPowerCache; ++k) m.powers_.push_back(multiply(m.powers_.back(), m.transition_));
  return m;
}

Measure Measure::periodic(Alphabet alphabet, std::span<const Symbol> word) {
  if (word.empty()) throw std::invalid_argument("periodic: empty word");
  return periodic(std::move(alphabet), Pattern::word(word));
}

Measure Measure::periodic(Alphabet alphabet, const Pattern& tile) {
  const int d = tile.dim();
  if (tile.shape.empty()) throw std::invalid_argument("periodic: empty tile");
  const GroupElement lo = tile.shape.lower_corner(), hi = tile.shape.upper_corner();
  if (!lo.is_identity() || FiniteSubset::box(lo, hi) != tile.shape)
    throw std::invalid_argument("periodic: tile must be a box with lower corner 0");
  for (auto s : tile.symbols)
    if (s >= alphabet.size()) throw std::invalid_argument("periodic: symbol outside the alphabet");
  Measure m;
  m.kind_ = MeasureKind::periodic;
  m.alphabet_ = std::move(alphabet);
  m.dim_ = d;
  for (int i = 0; i < d; ++i) m.periods_.push_back(hi[i] + 1);
  std::set<std::vector<Symbol>> points;
  for (const auto& s : tile.shape) {
    std::vector<Symbol> t(tile.shape.size());
    for (std::size_t c = 0; c < tile.shape.size(); ++c)
      t[c] = tile.symbols[torus_index(tile.shape[c] + s, m.periods_)];
    points.insert(std::move(t));
  }
  m.orbit_.assign(points.begin(), points.end());
  m.ergodic_ = true;
  return m;
}

Measure Measure::convex(std::vector<double> weights, std::vector<Measure> components) {
  if (weights.size() != components.size() || components.empty())
    throw std::invalid_argument("convex: one weight per component");
  check_probability_vector(weights, "convex weights");
  for (const auto& c : components) {
    if (c.dim() != components[0].dim()) throw DimensionError("convex: dimension mismatch");
    if (!(c.alphabet() == components[0].alphabet())) throw std::invalid_argument("convex: alphabet mismatch");
  }
  Measure m;
  m.kind_ = MeasureKind::convex;
  m.alphabet_ = components[0].alphabet();
  m.dim_ = components[0].dim();
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (weights[i] > 0) active.push_back(i);
  m.ergodic_ = !active.empty() && components[active[0]].ergodic();
  for (auto i : active)
    if (!components[i].same_description(components[active[0]])) m.ergodic_ = false;
  m.weights_ = std::move(weights);
  m.components_ = std::move(components);
  return m;
}

Measure Measure::empirical(Alphabet alphabet, EmpiricalSpec spec) {
  if (spec.base_points.empty()) throw std::invalid_argument("empirical: no base points");
  if (spec.averaging_set.empty()) throw std::invalid_argument("empirical: empty averaging set");
  for (const auto& x : spec.base_points)
    if (x.shape != spec.window) throw std::invalid_argument("empirical: base point not on the master window");
  if (spec.weights.empty()) spec.weights.assign(spec.base_points.size(), 1.0 / static_cast<double>(spec.base_points.size()));
  if (spec.weights.size() != spec.base_points.size()) throw std::invalid_argument("empirical: weight count mismatch");
  check_probability_vector(spec.weights, "empirical weights");
  Measure m;
  m.kind_ = MeasureKind::empirical;
  m.alphabet_ = std::move(alphabet);
  m.dim_ = spec.window.dim();
  m.ergodic_ = false;
  m.spec_ = std::make_shared<const EmpiricalSpec>(std::move(spec));
  return m;
}

double Measure::markov_mass(const Pattern& p) const {
  if (p.dim() != 1) throw DimensionError("markov measure needs d = 1");
  if (p.shape.empty()) return 1.0;
  double mass = probs_[p.symbols[0]];
  for (std::size_t i = 1; i < p.shape.size() && mass > 0.0; ++i) {
    const auto gap = static_cast<std::size_t>(p.shape[i][0] - p.shape[i - 1][0]);
    const Symbol a = p.symbols[i - 1], b = p.symbols[i];
    if (gap <= kPowerCache) {
      mass *= powers_[gap - 1][a][b];
    } else {
      Matrix q = powers_.back();
      for (std::size_t k = kPowerCache; k < gap; ++k) q = multiply(q, transition_);
      mass *= q[a][b];
    }
  }
  return mass;
}

double Measure::cylinder_mass(const Pattern& p) const {
  if (p.dim() != dim_) throw DimensionError("cylinder_mass: dimension mismatch");
  for (auto s : p.symbols)
    if (s >= alphabet_.size()) throw std::invalid_argument("cylinder_mass: symbol outside the alphabet");
  switch (kind_) {
    case MeasureKind::bernoulli: {
      double m = 1.0;
      for (auto s : p.symbols) m *= probs_[s];
      return m;
    }
    case MeasureKind::markov:
      return markov_mass(p);
    case MeasureKind::periodic: {
      std::vector<std::size_t> idx;
      idx.reserve(p.shape.size());
      for (const auto& h : p.shape) idx.push_back(torus_index(h, periods_));
      std::size_t hits = 0;
      for (const auto& t : orbit_) {
        bool ok = true;
        for (std::size_t i = 0; i < idx.size() && ok; ++i) ok = t[idx[i]] == p.symbols[i];
        hits += ok;
      }
      return static_cast<double>(hits) / static_cast<double>(orbit_.size());
    }
    case MeasureKind::convex: {
      double m = 0.0;
      for (std::size_t i = 0; i < components_.size(); ++i)
        if (weights_[i] > 0) m += weights_[i] * components_[i].cylinder_mass(p);
      return m;
    }
    case MeasureKind::empirical: {
      const EmpiricalSpec& s = *spec_;
      std::vector<std::vector<std::ptrdiff_t>> cols;
      for (const auto& g : s.averaging_set) {
        std::vector<std::ptrdiff_t> c;
        for (const auto& h : p.shape) {
          auto i = s.window.index_of(h + g);
          if (i < 0) throw WindowTooSmallError("empirical: shifted shape escapes the master window");
          c.push_back(i);
        }
        cols.push_back(std::move(c));
      }
      double m = 0.0;
      for (std::size_t b = 0; b < s.base_points.size(); ++b) {
        std::size_t hits = 0;
        const auto& x = s.base_points[b].symbols;
        for (const auto& c : cols) {
          bool ok = true;
          for (std::size_t i = 0; i < c.size() && ok; ++i) ok = x[static_cast<std::size_t>(c[i])] == p.symbols[i];
          hits += ok;
        }
        m += s.weights[b] * static_cast<double>(hits) / static_cast<double>(cols.size());
      }
      return m;
    }
  }
  return 0.0;
}

std::optional<double> Measure::entropy_rate() const {
  switch (kind_) {
    case MeasureKind::bernoulli: {
      double h = 0;
      for (double p : probs_) h += phi(p);
      return h;
    }
    case MeasureKind::markov: {
      double h = 0;
      for (std::size_t a = 0; a < probs_.size(); ++a)
        for (double p : transition_[a]) h += probs_[a] * phi(p);
      return h;
    }
    case MeasureKind::periodic:
      return 0.0;
    case MeasureKind::convex: {
      double h = 0;
      for (std::size_t i = 0; i < components_.size(); ++i) {
        if (weights_[i] == 0) continue;
        auto c = components_[i].entropy_rate();
        if (!c) return std::nullopt;
        h += weights_[i] * *c;
      }
      return h;
    }
    case MeasureKind::empirical:
      return std::nullopt;
  }
  return std::nullopt;
}

bool Measure::same_description(const Measure& o) const {
  if (kind_ != o.kind_ || dim_ != o.dim_ || !(alphabet_ == o.alphabet_)) return false;
  switch (kind_) {
    case MeasureKind::bernoulli: return probs_ == o.probs_;
    case MeasureKind::markov: return transition_ == o.transition_ && probs_ == o.probs_;
    case MeasureKind::periodic: return periods_ == o.periods_ && orbit_ == o.orbit_;
    case MeasureKind::convex: {
      if (weights_ != o.weights_) return false;
      for (std::size_t i = 0; i < components_.size(); ++i)
        if (!components_[i].same_description(o.components_[i])) return false;
      return true;
    }
    case MeasureKind::empirical:
      return spec_ == o.spec_;
  }
  return false;
}

Measure convex_combine(double a, const Measure& nu, const Measure& eta) {
  if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("convex_combine: a must lie in [0,1]");
  if (a == 1.0) return nu;
  if (a == 0.0) return eta;
  return Measure::convex({a, 1.0 - a}, {nu, eta});
}

std::vector<double> word_masses(const Measure& mu, const WindowLanguage& lang) {
  std::vector<double> m(lang.size());
  if (lang.width() == 0) {
    std::fill(m.begin(), m.end(), 1.0);
    return m;
  }
  for (std::size_t i = 0; i < lang.size(); ++i) m[i] = mu.cylinder_mass(lang.pattern(i));
  return m;
}

double set_mass(const Measure& mu, const SymbolicSet& u, const FiniteSubset& window, const SFT* support) {
  const SFT full = support ? *support : SFT::full_shift(mu.alphabet(), mu.dim());
  const auto lang = language(full, window);
  const auto masses = word_masses(mu, lang);
  const double total = std::accumulate(masses.begin(), masses.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("set_mass: measure is not carried by the support language");
  double s = 0.0;
  for (auto i : members(u, lang)) s += masses[i];
  return s;
}

double invariance_defect(const Measure& mu, const SymbolicSet& u, const GroupElement& g, const FiniteSubset& window,
                         const SFT* support) {
  return std::abs(set_mass(mu, u, window, support) - set_mass(mu, translate(u, g), window, support));
}

}  // namespace locent
