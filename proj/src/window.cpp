#include "locent/window.hpp"

#include <algorithm>
#include <unordered_map>

namespace locent {

ItemSet members(const SymbolicSet& u, const WindowLanguage& lang) {
  std::vector<char> hit(lang.size(), 0);
  for (const auto& c : u.cylinders) {
    if (c.shape.empty()) {
      std::fill(hit.begin(), hit.end(), 1);
      break;
    }
    const auto cols = lang.columns(c.shape);
    if (c.shape == lang.window()) {
      if (auto i = lang.find(c.symbols)) hit[*i] = 1;
      continue;
    }
    for (std::size_t i = 0; i < lang.size(); ++i) {
      if (hit[i]) continue;
      auto w = lang.word(i);
      bool ok = true;
      for (std::size_t j = 0; j < cols.size() && ok; ++j) ok = w[cols[j]] == c.symbols[j];
      if (ok) hit[i] = 1;
    }
  }
  ItemSet out;
  for (std::size_t i = 0; i < hit.size(); ++i)
    if (hit[i]) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

WindowFamily restrict_cover(const Cover& u, const WindowLanguage& lang) {
  WindowFamily f;
  f.universe = lang.size();
  f.sets.reserve(u.size());
  for (const auto& e : u.elements) f.sets.push_back(members(e, lang));
  return f;
}

ItemSet intersect_items(const ItemSet& a, const ItemSet& b) {
  ItemSet r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

void keep_maximal(std::vector<ItemSet>& sets) {
  std::erase_if(sets, [](const ItemSet& s) { return s.empty(); });
  std::sort(sets.begin(), sets.end(), [](const ItemSet& a, const ItemSet& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<ItemSet> kept;
  // kept sets indexed by every item they hold
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> holders;
  for (auto& s : sets) {
    bool dominated = false;
    if (auto it = holders.find(s.front()); it != holders.end()) {
      for (auto k : it->second)
        if (std::includes(kept[k].begin(), kept[k].end(), s.begin(), s.end())) {
          dominated = true;
          break;
        }
    }
    if (dominated) continue;
    const auto id = static_cast<std::uint32_t>(kept.size());
    for (auto x : s) holders[x].push_back(id);
    kept.push_back(std::move(s));
  }
  sets = std::move(kept);
}

WindowFamily refine(const WindowFamily& a, const WindowFamily& b, bool maximal_only) {
  WindowFamily r;
  r.universe = a.universe;
  for (const auto& x : a.sets)
    for (const auto& y : b.sets) {
      auto z = intersect_items(x, y);
      if (!z.empty()) r.sets.push_back(std::move(z));
    }
  if (maximal_only) {
    keep_maximal(r.sets);
  } else {
    std::sort(r.sets.begin(), r.sets.end());
    r.sets.erase(std::unique(r.sets.begin(), r.sets.end()), r.sets.end());
  }
  return r;
}

bool is_partition(const WindowFamily& f) {
  std::vector<int> hit(f.universe, 0);
  for (const auto& s : f.sets)
    for (auto i : s)
      if (++hit[i] > 1) return false;
  return std::all_of(hit.begin(), hit.end(), [](int c) { return c == 1; });
}

}  // namespace locent
