#include "locent/spectral.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace locent {

double spectral_radius(std::size_t n, std::span<const double> row_major) {
  if (row_major.size() != n * n) throw std::invalid_argument("spectral_radius: size mismatch");
  if (n == 0) return 0.0;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row_major[i * n + j];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("spectral_radius: eigen solver failed");
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace locent
