#pragma once

#include <cstddef>
#include <span>

namespace locent {

/// Largest eigenvalue modulus of an n x n row-major matrix.
double spectral_radius(std::size_t n, std::span<const double> row_major);

}  // namespace locent
