#pragma once

#include <span>
#include <vector>

#include "pse/system_matrix.hpp"

namespace pse {

enum class SolveMethod {
  Auto,             ///< dense Cholesky up to `dense_limit`, PCG above
  DenseCholesky,
  ConjugateGradient,
};

struct SolveOptions {
  SolveMethod method = SolveMethod::Auto;
  int dense_limit = 512;
  /// Target for |Hx - b|_2 / |b|_2.
  double tolerance = 1e-10;
  /// PCG iteration cap is `max_iterations_factor * n` per refinement pass.
  int max_iterations_factor = 10;
  int refinement_passes = 3;
  /// Normwise backward error |r| / (|H| |x| + |b|) accepted when the relative
  /// residual target lies below the rounding floor of an ill-conditioned H.
  double backward_tolerance = 1e-12;
};

struct SolveReport {
  SolveMethod method = SolveMethod::Auto;
  int iterations = 0;  ///< PCG iterations summed over refinement passes
  double relative_residual = 0.0;
  double backward_error = 0.0;
};

/// Reusable solver for one SPD system. Holds the Cholesky factor on the dense
/// path, so repeated solves (inverse iteration) cost two triangular sweeps.
class SpdSolver {
 public:
  /// Throws NonConvergence if the dense factorisation meets a non-positive
  /// pivot.
  explicit SpdSolver(const SystemMatrix& h, SolveOptions options = {});

  /// Throws NonConvergence when neither the residual target nor the backward
  /// error bound is met.
  std::vector<double> solve(std::span<const double> b, SolveReport* report = nullptr) const;

  SolveMethod method() const noexcept { return method_; }
  const SystemMatrix& matrix() const noexcept { return h_; }

 private:
  std::vector<double> pcg(std::span<const double> b, int& iterations) const;
  std::vector<double> cholesky_solve(std::span<const double> b) const;

  SystemMatrix h_;
  SolveOptions options_;
  SolveMethod method_;
  std::vector<double> factor_;  // row-major lower triangle, dense path only
};

std::vector<double> solve_spd(const SystemMatrix& h, std::span<const double> b,
                              const SolveOptions& options = {},
                              SolveReport* report = nullptr);

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;  ///< unit 2-norm, largest-magnitude entry positive
};

struct EigenOptions {
  SolveOptions solve;
  /// Stop once successive Rayleigh quotients differ by less than this,
  /// relative to the current quotient (or by less than the rounding floor
  /// 1e3 eps |H|_inf)...
  double rayleigh_tolerance = 1e-12;
  /// ...and |Hz - E z| <= residual_tolerance * E (or the rounding floor).
  double residual_tolerance = 1e-9;
  int max_iterations = 20000;
};

/// Smallest eigenpair of an SPD matrix by inverse power iteration.
/// Throws NonConvergence.
EigenPair smallest_eigenpair(const SystemMatrix& h, const EigenOptions& options = {});

}  // namespace pse
