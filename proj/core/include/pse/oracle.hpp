#pragma once

#include <span>
#include <vector>

#include "pse/system_matrix.hpp"

namespace pse {

/// Full eigendecomposition H = U diag(lambda) U^T, eigenvalues ascending.
struct SpectralBasis {
  int n = 0;
  std::vector<double> eigenvalues;
  /// Column-major: eigenvector k occupies [k*n, (k+1)*n).
  std::vector<double> eigenvectors;

  std::span<const double> vector(int k) const {
    return {eigenvectors.data() + static_cast<std::size_t>(k) * n, static_cast<std::size_t>(n)};
  }
};

struct DenseOracle {
  int n = 0;
  std::vector<double> inverse;  ///< row-major n x n
  SpectralBasis basis;

  std::vector<double> apply_inverse(std::span<const double> b) const;
};

inline constexpr int kDenseOracleLimit = 512;

/// Independent dense route: inverse through full-pivot LU and a symmetric
/// eigendecomposition. Throws DimensionTooLarge for n > 512.
DenseOracle dense_oracle(const SystemMatrix& h);

/// y = sum_k lambda_k^{-1} u_k (u_k^T s): the seed vector diffused through the
/// spectral embedding with coordinates weighted by lambda^{-1/2}. With s = 1
/// this equals H^{-1} 1. Throws DimensionMismatch or InvalidArgument
/// (non-positive eigenvalue).
std::vector<double> spectral_reconstruction(const SpectralBasis& basis, std::span<const double> s);

}  // namespace pse
