#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pse/regions.hpp"
#include "pse/slic.hpp"
#include "pse/system_matrix.hpp"

namespace pse {

/// Unordered region pair stored as (first < second).
using RegionPair = std::pair<int, int>;

/// Undirected weighted edge, i < j, w > 0.
struct Edge {
  int i = 0;
  int j = 0;
  double w = 0.0;
};

/// Affinity graph over regions. `prior` is the boundary penalty v; the system
/// matrix it defines is H = D - W + diag(prior).
struct SaliencyGraph {
  int n = 0;
  std::vector<Edge> edges;
  std::vector<double> degree;
  std::vector<double> prior;

  /// Builds the graph and its degree vector. Prior defaults to all zeros.
  /// Throws InvalidArgument on self-edges, i >= j, or non-positive weights.
  static SaliencyGraph from_edges(int n, std::vector<Edge> edges,
                                  std::vector<double> prior = {});

  double max_degree() const noexcept;
};

/// Region pairs that touch in the 4-neighbourhood, closed under one extra hop
/// (neighbours of neighbours). Sorted, no self pairs.
std::vector<RegionPair> build_adjacency(const Segmentation& seg);

struct AffinityParams {
  double sigma = 10.0;
  /// Lower clamp on edge weights. Zero keeps the plain Gaussian kernel.
  double min_weight = 0.0;
};

/// Gaussian kernel on mean CIELab distance:
///   w = exp(-|lab_i - lab_j|^2 / (2 sigma^2)).
/// Prior is left at zero; see assemble_prior.
SaliencyGraph compute_affinity(std::span<const Region> regions,
                               std::span<const RegionPair> pairs,
                               const AffinityParams& params = {});

/// Boundary prior: v_i = q * max_k d_k on boundary regions, zero elsewhere.
/// If no region touches the border every region gets q * max_k d_k.
/// A graph without edges uses q as the penalty (max degree is zero).
/// Throws NonPositiveQ for q <= 0.
std::vector<double> assemble_prior(std::span<const Region> regions,
                                   std::span<const double> degree, double q);

/// H = D - W + V. Throws NoPositivePrior if v is all zero, or if some
/// connected component of the graph carries no positive prior entry (H would
/// be singular on it).
SystemMatrix assemble_h(const SaliencyGraph& graph);

/// D - W + epsilon I, regardless of the graph's prior. Throws InvalidArgument
/// for epsilon <= 0.
SystemMatrix regularized_laplacian(const SaliencyGraph& graph, double epsilon);

}  // namespace pse
