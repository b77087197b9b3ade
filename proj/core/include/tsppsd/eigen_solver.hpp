#pragma once

#include <vector>

#include "tsppsd/matrix.hpp"

namespace tsppsd {

/// Eigenvalues in ascending order; vectors[i] pairs with values[i] when requested.
struct SymmetricEigen {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;
};

/// Cyclic Jacobi rotations with a fixed row-by-row sweep order.
SymmetricEigen jacobi_eigen(const RealMatrix& m, bool want_vectors = false, int max_sweeps = 100);

/// Dimension above which symmetric_eigen hands off to Householder tridiagonalization.
inline constexpr std::size_t kJacobiMaxDim = 160;

/// Jacobi for small matrices, Eigen's tridiagonal QR beyond kJacobiMaxDim.
SymmetricEigen symmetric_eigen(const RealMatrix& m, bool want_vectors = false);

}  // namespace tsppsd
