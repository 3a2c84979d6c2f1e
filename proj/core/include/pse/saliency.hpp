#pragma once

#include <span>
#include <vector>

#include "pse/graph.hpp"
#include "pse/image.hpp"
#include "pse/regions.hpp"
#include "pse/slic.hpp"
#include "pse/solve.hpp"
#include "pse/system_matrix.hpp"

namespace pse {

/// Non-negative weights summing to one.
class ProbabilityVector {
 public:
  ProbabilityVector() = default;

  /// Divides by the sum. Entries below zero by no more than 1e-9 of the
  /// largest entry are treated as rounding and clamped; anything more
  /// negative, a non-positive sum, or a non-finite entry throws
  /// InvalidArgument.
  static ProbabilityVector normalize(std::vector<double> weights);

  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> values() const noexcept { return p_; }

 private:
  explicit ProbabilityVector(std::vector<double> p) : p_(std::move(p)) {}
  std::vector<double> p_;
};

/// Row-major per-pixel saliency in [0, 1].
using SaliencyMap = Raster<double>;

/// Closed-form estimate p = H^{-1} 1 / (1^T H^{-1} 1).
ProbabilityVector pse_saliency(const SystemMatrix& h, const SolveOptions& options = {});

/// p_i = z_i^2 with z the unit eigenvector of the smallest eigenvalue of H.
ProbabilityVector qcut_saliency(const SystemMatrix& h, const EigenOptions& options = {});

/// (D - W + epsilon I)^{-1} s.
std::vector<double> diffusion_regularized(const SaliencyGraph& graph, std::span<const double> seed,
                                          double epsilon, const SolveOptions& options = {});

/// mu/(1+mu) (I - D^{-1/2} W D^{-1/2} / (1+mu))^{-1} s. Throws ZeroDegreeNode
/// when some region has no edges.
std::vector<double> manifold_ranking(const SaliencyGraph& graph, std::span<const double> seed,
                                     double mu, const SolveOptions& options = {});

/// Default seed for the diffusion baselines: 1 on interior regions, 0 on
/// regions touching the image border.
std::vector<double> boundary_seed(std::span<const Region> regions);

/// Min-max rescale into [0, 1]. A map whose spread is within 1e-12 of its
/// magnitude is constant and becomes all zeros.
void normalize_map(SaliencyMap& map);

/// Pixel-wise mean of the levels, then normalize_map. Throws EmptyInput or
/// DimensionMismatch.
SaliencyMap fuse_multiresolution(std::span<const SaliencyMap> maps);

/// Paints each pixel with its region's value and normalises. Throws
/// DimensionMismatch when `values` does not have one entry per region.
SaliencyMap render_map(std::span<const double> values, const Segmentation& seg);
SaliencyMap render_map(const ProbabilityVector& p, const Segmentation& seg);

/// 8-bit quantisation used for PNG output and threshold sweeps:
/// round(255 * v) with v clamped to [0, 1].
GrayImage quantize_map(const SaliencyMap& map);

}  // namespace pse
