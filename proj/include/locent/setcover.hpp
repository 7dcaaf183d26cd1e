#pragma once

// Exact minimum set cover and minimum mass cover by branch and bound.

#include <cstddef>
#include <span>
#include <vector>

#include "locent/window.hpp"

namespace locent {

struct SetCoverResult {
  std::size_t size = 0;
  /// false when the node budget ran out; size is then an upper bound
  bool exact = true;
  std::size_t nodes = 0;
  std::vector<std::size_t> chosen;  // indices into the input family
};

constexpr std::size_t kDefaultNodeBudget = 10'000'000;

/// Fewest members whose union is the universe. Throws std::invalid_argument
/// when the family does not cover.
SetCoverResult min_set_cover(const WindowFamily& family, std::size_t node_budget = kDefaultNodeBudget);

/// Fewest members whose union has total weight >= target.
SetCoverResult min_mass_cover(const WindowFamily& family, std::span<const double> weight, double target,
                              std::size_t node_budget = kDefaultNodeBudget);

}  // namespace locent
