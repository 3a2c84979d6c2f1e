#include "pse/oracle.hpp"

#include <string>

#include <Eigen/Dense>

#include "pse/error.hpp"

namespace pse {

DenseOracle dense_oracle(const SystemMatrix& h) {
  const int n = h.size();
  if (n > kDenseOracleLimit) {
    throw Error(ErrorCode::DimensionTooLarge,
                "n=" + std::to_string(n) + " exceeds " + std::to_string(kDenseOracleLimit));
  }
  const auto dense = h.dense();
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      a(dense.data(), n, n);

  DenseOracle out;
  out.n = n;
  const Eigen::MatrixXd inv = a.fullPivLu().inverse();
  out.inverse.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out.inverse[static_cast<std::size_t>(i) * n + j] = inv(i, j);
  }

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::NonConvergence, "symmetric eigensolver failed");
  }
  out.basis.n = n;
  out.basis.eigenvalues.assign(eig.eigenvalues().data(), eig.eigenvalues().data() + n);
  out.basis.eigenvectors.assign(eig.eigenvectors().data(),
                                eig.eigenvectors().data() + static_cast<std::size_t>(n) * n);
  return out;
}

std::vector<double> DenseOracle::apply_inverse(std::span<const double> b) const {
  if (b.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::DimensionMismatch, "vector length does not match oracle");
  }
  std::vector<double> y(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += inverse[static_cast<std::size_t>(i) * n + j] * b[j];
    y[i] = acc;
  }
  return y;
}

std::vector<double> spectral_reconstruction(const SpectralBasis& basis,
                                            std::span<const double> s) {
  const auto n = static_cast<std::size_t>(basis.n);
  if (s.size() != n) throw Error(ErrorCode::DimensionMismatch, "seed length does not match basis");
  std::vector<double> y(n, 0.0);
  for (int k = 0; k < basis.n; ++k) {
    const double lambda = basis.eigenvalues[k];
    if (!(lambda > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "basis has a non-positive eigenvalue");
    }
    const auto u = basis.vector(k);
    double proj = 0.0;
    for (std::size_t i = 0; i < n; ++i) proj += u[i] * s[i];
    const double coeff = proj / lambda;
    for (std::size_t i = 0; i < n; ++i) y[i] += coeff * u[i];
  }
  return y;
}

}  // namespace pse
