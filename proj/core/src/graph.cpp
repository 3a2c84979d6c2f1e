#include "pse/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "pse/error.hpp"

namespace pse {

SaliencyGraph SaliencyGraph::from_edges(int n, std::vector<Edge> edges,
                                        std::vector<double> prior) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative node count");
  SaliencyGraph g;
  g.n = n;
  g.degree.assign(static_cast<std::size_t>(n), 0.0);
  for (const Edge& e : edges) {
    if (e.i < 0 || e.j >= n || e.i >= e.j) {
      throw Error(ErrorCode::InvalidArgument, "edge must satisfy 0 <= i < j < n");
    }
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw Error(ErrorCode::InvalidArgument, "edge weight must be positive");
    }
    g.degree[e.i] += e.w;
    g.degree[e.j] += e.w;
  }
  g.edges = std::move(edges);
  if (prior.empty()) prior.assign(static_cast<std::size_t>(n), 0.0);
  if (prior.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::DimensionMismatch, "prior length does not match n");
  }
  g.prior = std::move(prior);
  return g;
}

double SaliencyGraph::max_degree() const noexcept {
  return degree.empty() ? 0.0 : *std::max_element(degree.begin(), degree.end());
}

std::vector<RegionPair> build_adjacency(const Segmentation& seg) {
  const int n = seg.region_count;
  const int w = seg.width(), h = seg.height();
  std::vector<std::set<int>> nbrs(static_cast<std::size_t>(n));
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int a = seg.labels(x, y);
      if (x + 1 < w) {
        const int b = seg.labels(x + 1, y);
        if (a != b) { nbrs[a].insert(b); nbrs[b].insert(a); }
      }
      if (y + 1 < h) {
        const int b = seg.labels(x, y + 1);
        if (a != b) { nbrs[a].insert(b); nbrs[b].insert(a); }
      }
    }
  }

  std::set<RegionPair> pairs;
  for (int a = 0; a < n; ++a) {
    for (const int b : nbrs[a]) {
      if (a < b) pairs.emplace(a, b);
      for (const int c : nbrs[b]) {
        if (a < c) pairs.emplace(a, c);
      }
    }
  }
  return {pairs.begin(), pairs.end()};
}

SaliencyGraph compute_affinity(std::span<const Region> regions,
                               std::span<const RegionPair> pairs,
                               const AffinityParams& params) {
  if (!(params.sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be positive");
  if (params.min_weight < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "min_weight must be non-negative");
  }
  const int n = static_cast<int>(regions.size());
  const double denom = 2.0 * params.sigma * params.sigma;
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [i, j] : pairs) {
    if (i < 0 || j >= n || i >= j) {
      throw Error(ErrorCode::InvalidArgument, "pair must satisfy 0 <= i < j < n");
    }
    const Lab& a = regions[i].mean_lab;
    const Lab& b = regions[j].mean_lab;
    const double dl = a.l - b.l, da = a.a - b.a, db = a.b - b.b;
    const double w = std::max(std::exp(-(dl * dl + da * da + db * db) / denom), params.min_weight);
    // A weight that underflows is an absent edge.
    if (w > 0.0) edges.push_back({i, j, w});
  }
  return SaliencyGraph::from_edges(n, std::move(edges));
}

std::vector<double> assemble_prior(std::span<const Region> regions,
                                   std::span<const double> degree, double q) {
  if (!(q > 0.0)) throw Error(ErrorCode::NonPositiveQ, "q must be positive");
  if (regions.size() != degree.size()) {
    throw Error(ErrorCode::DimensionMismatch, "degree length does not match regions");
  }
  double max_d = 0.0;
  for (const double d : degree) max_d = std::max(max_d, d);
  const double penalty = max_d > 0.0 ? q * max_d : q;

  const bool any_boundary = std::any_of(regions.begin(), regions.end(),
                                        [](const Region& r) { return r.is_boundary; });
  std::vector<double> v(regions.size(), 0.0);
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (!any_boundary || regions[i].is_boundary) v[i] = penalty;
  }
  return v;
}

namespace {

std::vector<OffDiagonal> negated_weights(const SaliencyGraph& graph) {
  std::vector<OffDiagonal> upper;
  upper.reserve(graph.edges.size());
  for (const Edge& e : graph.edges) upper.push_back({e.i, e.j, -e.w});
  return upper;
}

}  // namespace

SystemMatrix assemble_h(const SaliencyGraph& graph) {
  const auto n = static_cast<std::size_t>(graph.n);
  if (graph.prior.size() != n || graph.degree.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "graph vectors do not match n");
  }
  for (const double v : graph.prior) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument, "prior entries must be non-negative");
    }
  }
  if (std::none_of(graph.prior.begin(), graph.prior.end(), [](double v) { return v > 0.0; })) {
    throw Error(ErrorCode::NoPositivePrior, "prior vector is all zero");
  }

  // Each connected component needs its own positive prior entry.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (const Edge& e : graph.edges) parent[find(e.i)] = find(e.j);
  std::vector<char> anchored(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (graph.prior[i] > 0.0) anchored[find(static_cast<int>(i))] = 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!anchored[find(static_cast<int>(i))]) {
      throw Error(ErrorCode::NoPositivePrior,
                  "node " + std::to_string(i) + " lies in a component without prior");
    }
  }

  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = graph.degree[i] + graph.prior[i];
  const auto upper = negated_weights(graph);
  return SystemMatrix(graph.n, std::move(diag), upper);
}

SystemMatrix regularized_laplacian(const SaliencyGraph& graph, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  std::vector<double> diag(graph.degree);
  for (double& d : diag) d += epsilon;
  const auto upper = negated_weights(graph);
  return SystemMatrix(graph.n, std::move(diag), upper);
}

}  // namespace pse
