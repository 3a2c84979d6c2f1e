#include "pse/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pse/color.hpp"
#include "pse/error.hpp"

namespace pse {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Pse: return "pse";
    case Method::QCut: return "qcut";
    case Method::Diffusion: return "diffusion";
    case Method::Manifold: return "manifold";
  }
  return "pse";
}

Method parse_method(std::string_view name) {
  if (name == "pse") return Method::Pse;
  if (name == "qcut") return Method::QCut;
  if (name == "diffusion") return Method::Diffusion;
  if (name == "manifold") return Method::Manifold;
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

void PipelineConfig::validate() const {
  if (!(q > 0.0)) throw Error(ErrorCode::NonPositiveQ, "q must be positive");
  if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma must be positive");
  if (min_weight < 0.0) throw Error(ErrorCode::InvalidArgument, "min_weight must be >= 0");
  if (granularities.empty()) throw Error(ErrorCode::InvalidArgument, "no granularity levels");
  if (!(slic_compactness > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "compactness must be positive");
  }
  if (slic_iterations < 1) throw Error(ErrorCode::InvalidArgument, "iterations must be >= 1");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (!(mu > 0.0)) throw Error(ErrorCode::InvalidArgument, "mu must be positive");
}

namespace {

bool has_contrast(const std::vector<Region>& regions) {
  const Lab& ref = regions.front().mean_lab;
  for (const Region& r : regions) {
    if (std::abs(r.mean_lab.l - ref.l) > 1e-9 || std::abs(r.mean_lab.a - ref.a) > 1e-9 ||
        std::abs(r.mean_lab.b - ref.b) > 1e-9) {
      return true;
    }
  }
  return false;
}

}  // namespace

LevelResult compute_level(const LabImage& lab, int target_regions, const PipelineConfig& config) {
  LevelResult level;
  level.segmentation = slic_segment(
      lab, {target_regions, config.slic_compactness, config.slic_iterations});
  level.regions = extract_regions(lab, level.segmentation);
  const auto pairs = build_adjacency(level.segmentation);
  level.graph = compute_affinity(level.regions, pairs, {config.sigma, config.min_weight});
  level.graph.prior = assemble_prior(level.regions, level.graph.degree, config.q);

  if (!has_contrast(level.regions)) {
    level.region_values.assign(level.regions.size(), 0.0);
    level.map = SaliencyMap(lab.width(), lab.height(), 0.0);
    return level;
  }

  switch (config.method) {
    case Method::Pse: {
      const auto p = pse_saliency(assemble_h(level.graph), config.solve);
      level.region_values.assign(p.values().begin(), p.values().end());
      break;
    }
    case Method::QCut: {
      EigenOptions eig;
      eig.solve = config.solve;
      const auto p = qcut_saliency(assemble_h(level.graph), eig);
      level.region_values.assign(p.values().begin(), p.values().end());
      break;
    }
    case Method::Diffusion:
      level.region_values = diffusion_regularized(level.graph, boundary_seed(level.regions),
                                                  config.epsilon, config.solve);
      break;
    case Method::Manifold:
      level.region_values = manifold_ranking(level.graph, boundary_seed(level.regions),
                                             config.mu, config.solve);
      break;
  }
  level.map = render_map(level.region_values, level.segmentation);
  return level;
}

SaliencyMap compute_saliency(const RgbImage& img, const PipelineConfig& config) {
  config.validate();
  if (img.width() < 8 || img.height() < 8) {
    throw Error(ErrorCode::InvalidArgument, "image must be at least 8x8 pixels");
  }
  const LabImage lab = rgb_to_lab(img);
  std::vector<SaliencyMap> maps;
  maps.reserve(config.granularities.size());
  // Small images cannot hold the finer levels; those fall back to the
  // finest granularity the image supports.
  const int finest = static_cast<int>(lab.size() / 16);
  for (const int k : config.granularities) {
    maps.push_back(compute_level(lab, std::min(k, finest), config).map);
  }
  return fuse_multiresolution(maps);
}

}  // namespace pse
