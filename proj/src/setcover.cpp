#include "locent/setcover.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace locent {

namespace {

constexpr double kMassTol = 1e-12;

// Maximal members, each paired with one original index.
std::vector<std::pair<ItemSet, std::size_t>> reduce(const WindowFamily& f) {
  std::map<ItemSet, std::size_t> first;
  for (std::size_t i = 0; i < f.sets.size(); ++i) {
    for (auto x : f.sets[i])
      if (x >= f.universe) throw std::invalid_argument("set cover: item outside the universe");
    first.emplace(f.sets[i], i);
  }
  std::vector<ItemSet> sets;
  for (const auto& [s, i] : first) sets.push_back(s);
  keep_maximal(sets);
  std::vector<std::pair<ItemSet, std::size_t>> out;
  for (auto& s : sets) {
    const auto idx = first.at(s);
    out.emplace_back(std::move(s), idx);
  }
  return out;
}

class CoverSearch {
 public:
  CoverSearch(std::vector<std::pair<ItemSet, std::size_t>> sets, std::size_t universe, std::size_t budget)
      : sets_(std::move(sets)), universe_(universe), budget_(budget), cnt_(universe, 0), holders_(universe) {
    for (std::size_t j = 0; j < sets_.size(); ++j) {
      max_size_ = std::max(max_size_, sets_[j].first.size());
      for (auto x : sets_[j].first) holders_[x].push_back(j);
    }
    order_.resize(universe);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return holders_[a].size() < holders_[b].size(); });
    uncovered_ = universe;
  }

  SetCoverResult run() {
    for (std::size_t x = 0; x < universe_; ++x)
      if (holders_[x].empty()) throw std::invalid_argument("set cover: family does not cover the universe");
    // members forced by items held by one member only
    for (std::size_t x = 0; x < universe_; ++x)
      if (holders_[x].size() == 1 && cnt_[x] == 0) add(holders_[x][0]);
    greedy();
    dfs();
    SetCoverResult r;
    r.size = best_.size();
    r.exact = !aborted_;
    r.nodes = nodes_;
    for (auto j : best_) r.chosen.push_back(sets_[j].second);
    std::sort(r.chosen.begin(), r.chosen.end());
    return r;
  }

 private:
  void add(std::size_t j) {
    chosen_.push_back(j);
    for (auto x : sets_[j].first)
      if (cnt_[x]++ == 0) --uncovered_;
  }
  void remove(std::size_t j) {
    chosen_.pop_back();
    for (auto x : sets_[j].first)
      if (--cnt_[x] == 0) ++uncovered_;
  }
  std::size_t gain(std::size_t j) const {
    std::size_t g = 0;
    for (auto x : sets_[j].first) g += cnt_[x] == 0;
    return g;
  }

  void greedy() {
    const auto base = chosen_.size();
    while (uncovered_ > 0) {
      std::size_t bj = 0, bg = 0;
      for (std::size_t j = 0; j < sets_.size(); ++j) {
        auto g = gain(j);
        if (g > bg) { bg = g; bj = j; }
      }
      add(bj);
    }
    best_ = chosen_;
    while (chosen_.size() > base) remove(chosen_.back());
  }

  void dfs() {
    if (aborted_) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    if (uncovered_ == 0) {
      if (chosen_.size() < best_.size()) best_ = chosen_;
      return;
    }
    const std::size_t lb = chosen_.size() + (uncovered_ + max_size_ - 1) / max_size_;
    if (lb >= best_.size()) return;
    std::size_t item = 0;
    for (auto x : order_)
      if (cnt_[x] == 0) { item = x; break; }
    std::vector<std::pair<std::size_t, std::size_t>> cand;
    for (auto j : holders_[item]) cand.emplace_back(gain(j), j);
    std::sort(cand.begin(), cand.end(), [](auto& a, auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
    for (auto [g, j] : cand) {
      add(j);
      dfs();
      remove(j);
      if (aborted_) return;
    }
  }

  std::vector<std::pair<ItemSet, std::size_t>> sets_;
  std::size_t universe_;
  std::size_t budget_;
  std::vector<int> cnt_;
  std::vector<std::vector<std::size_t>> holders_;
  std::vector<std::size_t> order_;
  std::size_t uncovered_ = 0;
  std::size_t max_size_ = 1;
  std::vector<std::size_t> chosen_, best_;
  std::size_t nodes_ = 0;
  bool aborted_ = false;
};

class MassSearch {
 public:
  MassSearch(std::vector<std::pair<ItemSet, std::size_t>> sets, std::span<const double> w, double target,
             std::size_t budget)
      : sets_(std::move(sets)), w_(w), target_(target), budget_(budget), cnt_(w.size(), 0) {
    std::vector<double> mass(sets_.size());
    for (std::size_t j = 0; j < sets_.size(); ++j)
      for (auto x : sets_[j].first) mass[j] += w_[x];
    std::vector<std::size_t> idx(sets_.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return mass[a] > mass[b]; });
    std::vector<std::pair<ItemSet, std::size_t>> sorted;
    for (auto i : idx) sorted.push_back(std::move(sets_[i]));
    sets_ = std::move(sorted);
  }

  SetCoverResult run() {
    SetCoverResult r;
    if (target_ <= kMassTol) return r;
    greedy();
    for (std::size_t k = 1; k < best_.size() && !aborted_; ++k) {
      if (exists(0, k)) {
        best_ = found_;
        break;
      }
    }
    r.size = best_.size();
    r.exact = !aborted_;
    r.nodes = nodes_;
    for (auto j : best_) r.chosen.push_back(sets_[j].second);
    std::sort(r.chosen.begin(), r.chosen.end());
    return r;
  }

 private:
  double gain(std::size_t j) const {
    double g = 0;
    for (auto x : sets_[j].first)
      if (cnt_[x] == 0) g += w_[x];
    return g;
  }
  void add(std::size_t j) {
    chosen_.push_back(j);
    for (auto x : sets_[j].first)
      if (cnt_[x]++ == 0) mass_ += w_[x];
  }
  void remove(std::size_t j) {
    chosen_.pop_back();
    for (auto x : sets_[j].first)
      if (--cnt_[x] == 0) mass_ -= w_[x];
  }

  void greedy() {
    while (mass_ < target_ - kMassTol) {
      std::size_t bj = 0;
      double bg = -1;
      for (std::size_t j = 0; j < sets_.size(); ++j) {
        double g = gain(j);
        if (g > bg) { bg = g; bj = j; }
      }
      if (bg <= 0) throw std::invalid_argument("mass cover: target exceeds the mass of the union");
      add(bj);
    }
    best_ = chosen_;
    while (!chosen_.empty()) remove(chosen_.back());
    mass_ = 0;
  }

  bool exists(std::size_t start, std::size_t left) {
    if (mass_ >= target_ - kMassTol) {
      found_ = chosen_;
      return true;
    }
    if (left == 0 || aborted_) return false;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return false;
    }
    std::vector<double> gains;
    for (std::size_t j = start; j < sets_.size(); ++j) gains.push_back(gain(j));
    if (gains.empty()) return false;
    const std::size_t r = std::min(left, gains.size());
    std::partial_sort(gains.begin(), gains.begin() + static_cast<std::ptrdiff_t>(r), gains.end(), std::greater<>());
    if (mass_ + std::accumulate(gains.begin(), gains.begin() + static_cast<std::ptrdiff_t>(r), 0.0) <
        target_ - kMassTol)
      return false;
    for (std::size_t j = start; j < sets_.size(); ++j) {
      if (gain(j) <= 0) continue;
      add(j);
      const bool ok = exists(j + 1, left - 1);
      remove(j);
      if (ok) return true;
      if (aborted_) return false;
    }
    return false;
  }

  std::vector<std::pair<ItemSet, std::size_t>> sets_;
  std::span<const double> w_;
  double target_;
  std::size_t budget_;
  std::vector<int> cnt_;
  double mass_ = 0;
  std::vector<std::size_t> chosen_, best_, found_;
  std::size_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

SetCoverResult min_set_cover(const WindowFamily& family, std::size_t node_budget) {
  if (family.universe == 0) return {};
  auto sets = reduce(family);
  std::size_t total = 0;
  for (const auto& s : sets) total += s.first.size();
  if (total == family.universe) {
    // disjoint maximal members: a cover iff they exhaust the universe
    WindowFamily f{family.universe, {}};
    for (const auto& s : sets) f.sets.push_back(s.first);
    if (is_partition(f)) {
      SetCoverResult r;
      r.size = sets.size();
      for (const auto& s : sets) r.chosen.push_back(s.second);
      std::sort(r.chosen.begin(), r.chosen.end());
      return r;
    }
  }
  return CoverSearch(std::move(sets), family.universe, node_budget).run();
}

SetCoverResult min_mass_cover(const WindowFamily& family, std::span<const double> weight, double target,
                              std::size_t node_budget) {
  if (weight.size() != family.universe) throw std::invalid_argument("mass cover: weight size mismatch");
  return MassSearch(reduce(family), weight, target, node_budget).run();
}

}  // namespace locent
