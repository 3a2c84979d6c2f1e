#include "pse/solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pse/error.hpp"

namespace pse {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

SpdSolver::SpdSolver(const SystemMatrix& h, SolveOptions options)
    : h_(h), options_(options), method_(options.method) {
  const int n = h_.size();
  if (method_ == SolveMethod::Auto) {
    method_ = n <= options_.dense_limit ? SolveMethod::DenseCholesky
                                        : SolveMethod::ConjugateGradient;
  }
  if (method_ != SolveMethod::DenseCholesky) return;

  factor_ = h_.dense();
  const auto un = static_cast<std::size_t>(n);
  for (std::size_t j = 0; j < un; ++j) {
    double* row_j = &factor_[j * un];
    double diag = row_j[j];
    for (std::size_t k = 0; k < j; ++k) diag -= row_j[k] * row_j[k];
    if (!(diag > 0.0)) {
      throw Error(ErrorCode::NonConvergence,
                  "Cholesky pivot " + std::to_string(j) + " is not positive");
    }
    const double ljj = std::sqrt(diag);
    row_j[j] = ljj;
    for (std::size_t i = j + 1; i < un; ++i) {
      double* row_i = &factor_[i * un];
      double acc = row_i[j];
      for (std::size_t k = 0; k < j; ++k) acc -= row_i[k] * row_j[k];
      row_i[j] = acc / ljj;
    }
    std::fill(row_j + j + 1, row_j + un, 0.0);
  }
}

std::vector<double> SpdSolver::cholesky_solve(std::span<const double> b) const {
  const auto n = static_cast<std::size_t>(h_.size());
  std::vector<double> x(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = &factor_[i * n];
    double acc = x[i];
    for (std::size_t k = 0; k < i; ++k) acc -= row[k] * x[k];
    x[i] = acc / row[i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double acc = x[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= factor_[k * n + i] * x[k];
    x[i] = acc / factor_[i * n + i];
  }
  return x;
}

// Jacobi-preconditioned conjugate gradient from a zero initial guess.
std::vector<double> SpdSolver::pcg(std::span<const double> b, int& iterations) const {
  const auto n = static_cast<std::size_t>(h_.size());
  const auto diag = h_.diagonal();
  std::vector<double> x(n, 0.0), r(b.begin(), b.end()), z(n), p(n), ap(n);

  const double target = options_.tolerance * norm2(b);
  for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
  p = z;
  double rz = dot(r, z);
  const int max_iter = std::max(1, options_.max_iterations_factor * h_.size());

  for (int it = 0; it < max_iter; ++it) {
    if (norm2(r) <= target) break;
    h_.apply(p, ap);
    const double pap = dot(p, ap);
    if (!(pap > 0.0)) break;
    const double alpha = rz / pap;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    ++iterations;
    for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  return x;
}

std::vector<double> SpdSolver::solve(std::span<const double> b, SolveReport* report) const {
  const auto n = static_cast<std::size_t>(h_.size());
  if (b.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "right-hand side length does not match matrix");
  }
  SolveReport local;
  local.method = method_;
  const double b_norm = norm2(b);
  std::vector<double> x(n, 0.0);
  if (b_norm == 0.0) {
    if (report) *report = local;
    return x;
  }

  auto base_solve = [&](std::span<const double> rhs) {
    return method_ == SolveMethod::DenseCholesky ? cholesky_solve(rhs)
                                                 : pcg(rhs, local.iterations);
  };

  x = base_solve(b);
  std::vector<double> r(n);
  double rel = 0.0;
  for (int pass = 0;; ++pass) {
    h_.apply(x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    rel = norm2(r) / b_norm;
    if (rel <= options_.tolerance || pass >= options_.refinement_passes) break;
    const auto dx = base_solve(r);
    for (std::size_t i = 0; i < n; ++i) x[i] += dx[i];
  }

  local.relative_residual = rel;
  local.backward_error = norm2(r) / (h_.norm_inf() * norm2(x) + b_norm);
  if (report) *report = local;
  if (!std::isfinite(rel) ||
      (rel > options_.tolerance && local.backward_error > options_.backward_tolerance)) {
    throw Error(ErrorCode::NonConvergence,
                "relative residual " + std::to_string(rel) + ", backward error " +
                    std::to_string(local.backward_error));
  }
  return x;
}

std::vector<double> solve_spd(const SystemMatrix& h, std::span<const double> b,
                              const SolveOptions& options, SolveReport* report) {
  return SpdSolver(h, options).solve(b, report);
}

EigenPair smallest_eigenpair(const SystemMatrix& h, const EigenOptions& options) {
  const auto n = static_cast<std::size_t>(h.size());
  if (n == 0) throw Error(ErrorCode::EmptyInput, "empty matrix");
  const SpdSolver solver(h, options.solve);

  // Rounding floor for |Hz - E z| and for changes in E.
  const double floor = 1e3 * kEps * h.norm_inf();

  std::vector<double> z(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> hz(n);
  double value = std::numeric_limits<double>::infinity();
  bool converged = false;

  for (int it = 0; it < options.max_iterations; ++it) {
    auto y = solver.solve(z);
    const double norm = norm2(y);
    if (!(norm > 0.0) || !std::isfinite(norm)) break;
    // Rayleigh quotient of H^-1 at the current unit z. It avoids the
    // cancellation in z^T H z, which matters once E is far below |H|.
    const double rq = 1.0 / dot(z, y);
    for (std::size_t i = 0; i < n; ++i) z[i] = y[i] / norm;

    h.apply(z, hz);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) res += (hz[i] - rq * z[i]) * (hz[i] - rq * z[i]);
    res = std::sqrt(res);

    // A tiny E is only determined to about eps |H| in absolute terms, so the
    // relative test alone can stall on rounding jitter.
    const double step = std::abs(rq - value);
    const bool rq_settled = step <= options.rayleigh_tolerance * std::abs(rq) || step <= floor;
    value = rq;
    if (rq_settled && (res <= options.residual_tolerance * std::abs(rq) || res <= floor)) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw Error(ErrorCode::NonConvergence, "inverse iteration did not converge");
  }

  const auto largest = std::max_element(z.begin(), z.end(), [](double a, double b) {
    return std::abs(a) < std::abs(b);
  });
  if (*largest < 0.0) {
    for (double& v : z) v = -v;
  }
  return {value, std::move(z)};
}

}  // namespace pse
