#pragma once

#include <string_view>
#include <vector>

#include "pse/graph.hpp"
#include "pse/image.hpp"
#include "pse/regions.hpp"
#include "pse/saliency.hpp"
#include "pse/slic.hpp"
#include "pse/solve.hpp"

namespace pse {

enum class Method { Pse, QCut, Diffusion, Manifold };

std::string_view to_string(Method m) noexcept;
/// Accepts "pse", "qcut", "diffusion", "manifold". Throws InvalidArgument.
Method parse_method(std::string_view name);

struct PipelineConfig {
  Method method = Method::Pse;
  double q = 0.1;
  double sigma = 10.0;
  /// Edge-weight floor; keeps H numerically positive definite when an object
  /// is separated from the border by a very strong colour edge.
  double min_weight = 1e-8;
  std::vector<int> granularities{300, 500, 800};
  double slic_compactness = 10.0;
  int slic_iterations = 10;
  double epsilon = 1e-4;  ///< diffusion baseline regulariser
  double mu = 0.01;       ///< manifold-ranking fitting weight
  SolveOptions solve;

  /// Throws NonPositiveQ or InvalidArgument.
  void validate() const;
};

/// Everything computed for one segmentation level.
struct LevelResult {
  Segmentation segmentation;
  std::vector<Region> regions;
  SaliencyGraph graph;
  std::vector<double> region_values;  ///< saliency per region before rendering
  SaliencyMap map;
};

/// One level: SLIC, regions, 2-hop affinity graph, boundary prior, estimator,
/// render. A level whose regions all share one colour carries no contrast and
/// renders as the all-zero map.
LevelResult compute_level(const LabImage& lab, int target_regions, const PipelineConfig& config);

/// Full multiresolution saliency map for an RGB image. Levels above the
/// image's capacity (pixels / 16) are clamped to it. Images smaller than 8x8
/// throw InvalidArgument.
SaliencyMap compute_saliency(const RgbImage& img, const PipelineConfig& config);

}  // namespace pse
