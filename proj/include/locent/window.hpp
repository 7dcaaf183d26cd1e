#pragma once

// Set families restricted to a window language. Elements become sorted
// lists of word indices.

#include <cstdint>
#include <vector>

#include "locent/subshift.hpp"

namespace locent {

using ItemSet = std::vector<std::uint32_t>;

struct WindowFamily {
  std::size_t universe = 0;
  std::vector<ItemSet> sets;
};

/// Indices of window words lying in U. Throws WindowTooSmallError.
ItemSet members(const SymbolicSet& u, const WindowLanguage& lang);
WindowFamily restrict_cover(const Cover& u, const WindowLanguage& lang);

ItemSet intersect_items(const ItemSet& a, const ItemSet& b);

/// Drops empty sets, duplicates and sets contained in another member.
/// Result ordered by decreasing size, then lexicographically.
void keep_maximal(std::vector<ItemSet>& sets);

/// {a cap b} over all pairs, empties dropped, duplicates merged. With
/// maximal_only, also drops members contained in another one.
WindowFamily refine(const WindowFamily& a, const WindowFamily& b, bool maximal_only);

/// Whether the sets are pairwise disjoint and cover the universe.
bool is_partition(const WindowFamily& f);

}  // namespace locent
