#include "pse/system_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pse/error.hpp"

namespace pse {

SystemMatrix::SystemMatrix(int n, std::vector<double> diagonal,
                           std::span<const OffDiagonal> upper)
    : n_(n), diagonal_(std::move(diagonal)) {
  if (n < 0 || diagonal_.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::DimensionMismatch, "diagonal length does not match n");
  }
  for (int i = 0; i < n; ++i) {
    if (!(diagonal_[i] > 0.0) || !std::isfinite(diagonal_[i])) {
      throw Error(ErrorCode::InvalidArgument,
                  "diagonal entry " + std::to_string(i) + " is not positive");
    }
  }

  std::vector<int> count(static_cast<std::size_t>(n), 1);
  for (const auto& e : upper) {
    if (e.row < 0 || e.col >= n || e.row >= e.col) {
      throw Error(ErrorCode::InvalidArgument, "off-diagonal entry must satisfy 0 <= row < col < n");
    }
    if (!(e.value <= 0.0) || !std::isfinite(e.value)) {
      throw Error(ErrorCode::InvalidArgument, "off-diagonal entries must be non-positive");
    }
    ++count[e.row];
    ++count[e.col];
  }

  row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i) row_ptr_[i + 1] = row_ptr_[i] + count[i];
  cols_.resize(static_cast<std::size_t>(row_ptr_[n]));
  values_.resize(cols_.size());

  std::vector<int> fill(row_ptr_.begin(), row_ptr_.end() - 1);
  for (int i = 0; i < n; ++i) {
    cols_[fill[i]] = i;
    values_[fill[i]] = diagonal_[i];
    ++fill[i];
  }
  for (const auto& e : upper) {
    cols_[fill[e.row]] = e.col;
    values_[fill[e.row]++] = e.value;
    cols_[fill[e.col]] = e.row;
    values_[fill[e.col]++] = e.value;
  }

  // Off-diagonal part of each row sorted by column; catches duplicates.
  for (int i = 0; i < n; ++i) {
    const int begin = row_ptr_[i] + 1, end = row_ptr_[i + 1];
    std::vector<std::pair<int, double>> row;
    row.reserve(static_cast<std::size_t>(end - begin));
    for (int k = begin; k < end; ++k) row.emplace_back(cols_[k], values_[k]);
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k > 0 && row[k].first == row[k - 1].first) {
        throw Error(ErrorCode::InvalidArgument, "duplicate off-diagonal entry");
      }
      cols_[begin + k] = row[k].first;
      values_[begin + k] = row[k].second;
    }
  }
}

void SystemMatrix::apply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != static_cast<std::size_t>(n_) || y.size() != static_cast<std::size_t>(n_)) {
    throw Error(ErrorCode::DimensionMismatch, "vector length does not match matrix");
  }
  for (int i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) acc += values_[k] * x[cols_[k]];
    y[i] = acc;
  }
}

std::vector<double> SystemMatrix::apply(std::span<const double> x) const {
  std::vector<double> y(static_cast<std::size_t>(n_));
  apply(x, y);
  return y;
}

double SystemMatrix::at(int i, int j) const {
  for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
    if (cols_[k] == j) return values_[k];
  }
  return 0.0;
}

std::vector<double> SystemMatrix::dense() const {
  std::vector<double> out(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0.0);
  for (int i = 0; i < n_; ++i) {
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      out[static_cast<std::size_t>(i) * n_ + cols_[k]] = values_[k];
    }
  }
  return out;
}

double SystemMatrix::norm_inf() const noexcept {
  double best = 0.0;
  for (int i = 0; i < n_; ++i) {
    double row = 0.0;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) row += std::abs(values_[k]);
    best = std::max(best, row);
  }
  return best;
}

SystemMatrix SystemMatrix::scaled(double factor) const {
  if (!(factor > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  SystemMatrix out = *this;
  for (auto& d : out.diagonal_) d *= factor;
  for (auto& v : out.values_) v *= factor;
  return out;
}

}  // namespace pse
