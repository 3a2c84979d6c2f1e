#include "pse/saliency.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pse/error.hpp"

namespace pse {
namespace {

void require_nonnegative(std::span<const double> s, const char* what) {
  for (const double v : s) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be non-negative");
    }
  }
}

}  // namespace

ProbabilityVector ProbabilityVector::normalize(std::vector<double> weights) {
  if (weights.empty()) throw Error(ErrorCode::EmptyInput, "empty probability vector");
  double max = 0.0;
  for (const double w : weights) {
    if (!std::isfinite(w)) throw Error(ErrorCode::InvalidArgument, "non-finite weight");
    max = std::max(max, w);
  }
  for (double& w : weights) {
    if (w < 0.0) {
      if (w < -1e-9 * max) throw Error(ErrorCode::InvalidArgument, "negative weight");
      w = 0.0;
    }
  }
  double sum = 0.0;
  for (const double w : weights) sum += w;
  if (!(sum > 0.0)) throw Error(ErrorCode::InvalidArgument, "weights sum to zero");
  for (double& w : weights) w /= sum;
  return ProbabilityVector(std::move(weights));
}

ProbabilityVector pse_saliency(const SystemMatrix& h, const SolveOptions& options) {
  const std::vector<double> ones(static_cast<std::size_t>(h.size()), 1.0);
  return ProbabilityVector::normalize(solve_spd(h, ones, options));
}

ProbabilityVector qcut_saliency(const SystemMatrix& h, const EigenOptions& options) {
  auto pair = smallest_eigenpair(h, options);
  for (double& z : pair.vector) z *= z;
  return ProbabilityVector::normalize(std::move(pair.vector));
}

std::vector<double> diffusion_regularized(const SaliencyGraph& graph, std::span<const double> seed,
                                          double epsilon, const SolveOptions& options) {
  if (seed.size() != static_cast<std::size_t>(graph.n)) {
    throw Error(ErrorCode::DimensionMismatch, "seed length does not match graph");
  }
  require_nonnegative(seed, "seed");
  return solve_spd(regularized_laplacian(graph, epsilon), seed, options);
}

std::vector<double> manifold_ranking(const SaliencyGraph& graph, std::span<const double> seed,
                                     double mu, const SolveOptions& options) {
  if (!(mu > 0.0)) throw Error(ErrorCode::InvalidArgument, "mu must be positive");
  if (seed.size() != static_cast<std::size_t>(graph.n)) {
    throw Error(ErrorCode::DimensionMismatch, "seed length does not match graph");
  }
  require_nonnegative(seed, "seed");
  for (int i = 0; i < graph.n; ++i) {
    if (!(graph.degree[i] > 0.0)) {
      throw Error(ErrorCode::ZeroDegreeNode, "region " + std::to_string(i) + " has no edges");
    }
  }

  const double damping = 1.0 / (1.0 + mu);
  std::vector<OffDiagonal> upper;
  upper.reserve(graph.edges.size());
  for (const Edge& e : graph.edges) {
    const double normalized = e.w / std::sqrt(graph.degree[e.i] * graph.degree[e.j]);
    upper.push_back({e.i, e.j, -damping * normalized});
  }
  const SystemMatrix system(graph.n, std::vector<double>(static_cast<std::size_t>(graph.n), 1.0),
                            upper);
  auto f = solve_spd(system, seed, options);
  const double scale = mu / (1.0 + mu);
  for (double& v : f) v *= scale;
  return f;
}

std::vector<double> boundary_seed(std::span<const Region> regions) {
  std::vector<double> s(regions.size());
  for (std::size_t i = 0; i < regions.size(); ++i) s[i] = regions[i].is_boundary ? 0.0 : 1.0;
  return s;
}

void normalize_map(SaliencyMap& map) {
  if (map.empty()) return;
  const auto [lo_it, hi_it] = std::minmax_element(map.data().begin(), map.data().end());
  const double lo = *lo_it, hi = *hi_it;
  const double spread = hi - lo;
  const double scale = std::max(std::abs(lo), std::abs(hi));
  if (!(spread > 1e-12 * scale)) {
    std::fill(map.data().begin(), map.data().end(), 0.0);
    return;
  }
  for (double& v : map.data()) v = (v - lo) / spread;
}

SaliencyMap fuse_multiresolution(std::span<const SaliencyMap> maps) {
  if (maps.empty()) throw Error(ErrorCode::EmptyInput, "no maps to fuse");
  SaliencyMap out(maps[0].width(), maps[0].height(), 0.0);
  for (const auto& m : maps) {
    if (!m.same_shape(out)) throw Error(ErrorCode::DimensionMismatch, "map sizes differ");
    for (std::size_t i = 0; i < m.size(); ++i) out[i] += m[i];
  }
  const double n = static_cast<double>(maps.size());
  for (double& v : out.data()) v /= n;
  normalize_map(out);
  return out;
}

SaliencyMap render_map(std::span<const double> values, const Segmentation& seg) {
  if (values.size() != static_cast<std::size_t>(seg.region_count)) {
    throw Error(ErrorCode::DimensionMismatch, "one value per region required");
  }
  SaliencyMap out(seg.width(), seg.height());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = values[static_cast<std::size_t>(seg.labels[i])];
  }
  normalize_map(out);
  return out;
}

SaliencyMap render_map(const ProbabilityVector& p, const Segmentation& seg) {
  return render_map(p.values(), seg);
}

GrayImage quantize_map(const SaliencyMap& map) {
  GrayImage out(map.width(), map.height());
  for (std::size_t i = 0; i < map.size(); ++i) {
    const double v = std::clamp(map[i], 0.0, 1.0);
    out[i] = static_cast<std::uint8_t>(std::lround(255.0 * v));
  }
  return out;
}

}  // namespace pse
