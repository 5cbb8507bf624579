#pragma once

#include <vector>

namespace forge {

struct SymmetricEigen {
  std::vector<double> values;                // ascending
  std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k]
};

/// Cyclic Jacobi eigensolver for small dense symmetric matrices (row-major
/// n x n). Sweeps until the off-diagonal norm drops below 1e-13 times the
/// Frobenius norm; throws std::runtime_error if that fails within 60 sweeps.
SymmetricEigen jacobi_eigh(int n, std::vector<double> a);

}  // namespace forge
