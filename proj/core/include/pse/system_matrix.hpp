#pragma once

#include <span>
#include <vector>

namespace pse {

/// Strictly-upper off-diagonal entry of a symmetric matrix (row < col).
struct OffDiagonal {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// Sparse symmetric matrix with positive diagonal and non-positive
/// off-diagonal entries, stored as full CSR (both triangles, diagonal first in
/// each row). This is the structure every linear system in the library shares:
/// H = D - W + V, the epsilon-regularised Laplacian, and the normalised
/// manifold-ranking operator.
class SystemMatrix {
 public:
  SystemMatrix() = default;

  /// Throws InvalidArgument on out-of-range or duplicate indices, a
  /// non-positive diagonal entry, or a positive off-diagonal entry.
  SystemMatrix(int n, std::vector<double> diagonal, std::span<const OffDiagonal> upper);

  int size() const noexcept { return n_; }
  std::size_t nonzeros() const noexcept { return values_.size(); }

  /// y = A x
  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(std::span<const double> x) const;

  std::span<const double> diagonal() const noexcept { return diagonal_; }

  std::span<const int> row_offsets() const noexcept { return row_ptr_; }
  std::span<const int> columns() const noexcept { return cols_; }
  std::span<const double> values() const noexcept { return values_; }

  /// Entry (i, j); zero when not stored.
  double at(int i, int j) const;

  /// Row-major dense copy.
  std::vector<double> dense() const;

  /// Maximum absolute row sum.
  double norm_inf() const noexcept;

  /// Every entry multiplied by `factor` (> 0).
  SystemMatrix scaled(double factor) const;

 private:
  int n_ = 0;
  std::vector<double> diagonal_;
  std::vector<int> row_ptr_;
  std::vector<int> cols_;
  std::vector<double> values_;
};

}  // namespace pse
