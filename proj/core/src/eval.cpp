#include "pse/eval.hpp"

#include <algorithm>

#include "pse/error.hpp"
#include "pse/image_io.hpp"

namespace pse {

GroundTruth binarize_gt(const GrayImage& img) {
  GroundTruth gt;
  gt.mask = GrayImage(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i) {
    const bool fg = img[i] >= 128;
    gt.mask[i] = fg ? 1 : 0;
    gt.positives += fg ? 1 : 0;
  }
  return gt;
}

GroundTruth load_ground_truth(const std::filesystem::path& path) {
  return binarize_gt(load_gray(path));
}

EvalCurves pr_roc_curves(const SaliencyMap& map, const GroundTruth& gt) {
  if (!map.same_shape(gt.mask)) {
    throw Error(ErrorCode::DimensionMismatch, "map and ground truth sizes differ");
  }
  if (gt.degenerate()) {
    throw Error(ErrorCode::DegenerateGroundTruth, "mask needs foreground and background");
  }

  const GrayImage levels = quantize_map(map);
  std::array<long long, kThresholds> hist_pos{}, hist_neg{};
  for (std::size_t i = 0; i < levels.size(); ++i) {
    (gt.mask[i] ? hist_pos : hist_neg)[levels[i]] += 1;
  }

  EvalCurves c;
  c.positives = gt.positives;
  c.negatives = gt.negatives();
  long long tp = 0, fp = 0;
  for (int tau = kThresholds - 1; tau >= 0; --tau) {
    tp += hist_pos[tau];
    fp += hist_neg[tau];
    c.true_positives[tau] = tp;
    c.detected[tau] = tp + fp;
    c.precision[tau] = tp + fp == 0 ? 1.0 : double(tp) / double(tp + fp);
    c.recall[tau] = double(tp) / double(c.positives);
    c.fpr[tau] = double(fp) / double(c.negatives);
  }
  return c;
}

double max_f_beta(const EvalCurves& curves, double beta_sq) {
  double best = 0.0;
  for (int tau = 0; tau < kThresholds; ++tau) {
    const double p = curves.precision[tau], r = curves.recall[tau];
    const double denom = beta_sq * p + r;
    if (denom <= 0.0) continue;
    best = std::max(best, (1.0 + beta_sq) * p * r / denom);
  }
  return best;
}

double auc(const EvalCurves& curves) {
  // Walk tau downwards: fpr and recall grow from (0,0) towards (1,1).
  double area = 0.0;
  double px = 0.0, py = 0.0;
  for (int tau = kThresholds - 1; tau >= 0; --tau) {
    const double x = curves.fpr[tau], y = curves.recall[tau];
    area += (x - px) * (y + py) * 0.5;
    px = x;
    py = y;
  }
  area += (1.0 - px) * (1.0 + py) * 0.5;
  return area;
}

double mse(const SaliencyMap& map, const GroundTruth& gt) {
  if (!map.same_shape(gt.mask)) {
    throw Error(ErrorCode::DimensionMismatch, "map and ground truth sizes differ");
  }
  if (map.empty()) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < map.size(); ++i) {
    const double d = double(gt.mask[i]) - map[i];
    acc += d * d;
  }
  return acc / double(map.size());
}

EvalCurves evaluate(const SaliencyMap& map, const GroundTruth& gt, double beta_sq) {
  EvalCurves c = pr_roc_curves(map, gt);
  c.max_f_beta = max_f_beta(c, beta_sq);
  c.auc = auc(c);
  c.mse = mse(map, gt);
  return c;
}

EvalCurves aggregate(std::span<const EvalCurves> per_image, double beta_sq) {
  if (per_image.empty()) throw Error(ErrorCode::EmptyInput, "no curves to aggregate");
  EvalCurves out;
  const double n = double(per_image.size());
  for (const auto& c : per_image) {
    for (int tau = 0; tau < kThresholds; ++tau) {
      out.precision[tau] += c.precision[tau];
      out.recall[tau] += c.recall[tau];
      out.fpr[tau] += c.fpr[tau];
    }
    out.mse += c.mse;
  }
  for (int tau = 0; tau < kThresholds; ++tau) {
    out.precision[tau] /= n;
    out.recall[tau] /= n;
    out.fpr[tau] /= n;
  }
  out.mse /= n;
  out.max_f_beta = max_f_beta(out, beta_sq);
  out.auc = auc(out);
  return out;
}

}  // namespace pse
