#pragma once

#include <array>
#include <filesystem>
#include <span>

#include "pse/image.hpp"
#include "pse/saliency.hpp"

namespace pse {

/// Binary object mask; mask values are 0 or 1.
struct GroundTruth {
  GrayImage mask;
  long long positives = 0;

  int width() const noexcept { return mask.width(); }
  int height() const noexcept { return mask.height(); }
  long long negatives() const noexcept {
    return static_cast<long long>(mask.size()) - positives;
  }
  /// True when the mask is all-foreground or all-background; curve metrics
  /// are undefined for such masks.
  bool degenerate() const noexcept { return positives == 0 || negatives() == 0; }
};

/// Pixels >= 128 are foreground.
GroundTruth binarize_gt(const GrayImage& img);

/// load_gray + binarize_gt. Decode failures surface as CorruptImage,
/// UnsupportedFormat or FileNotFound.
GroundTruth load_ground_truth(const std::filesystem::path& path);

inline constexpr int kThresholds = 256;

/// Threshold-indexed curves over tau = 0..255 applied to the 8-bit quantised
/// map (see quantize_map): a pixel is detected at tau when its level >= tau.
struct EvalCurves {
  using Curve = std::array<double, kThresholds>;
  Curve precision{};
  Curve recall{};  ///< also the true-positive rate
  Curve fpr{};

  /// Raw counts behind the ratios; zero for aggregated curves.
  std::array<long long, kThresholds> detected{};
  std::array<long long, kThresholds> true_positives{};
  long long positives = 0;
  long long negatives = 0;

  double max_f_beta = 0.0;
  double auc = 0.0;
  double mse = 0.0;
};

/// Curves only; the scalar fields are left at zero. Precision is 1 where
/// nothing is detected. Throws DimensionMismatch or DegenerateGroundTruth.
EvalCurves pr_roc_curves(const SaliencyMap& map, const GroundTruth& gt);

/// max over tau of (1 + b2) P R / (b2 P + R); thresholds with P = R = 0 score 0.
double max_f_beta(const EvalCurves& curves, double beta_sq = 0.3);

/// Trapezoidal area under (fpr, recall) with (0,0) and (1,1) appended.
double auc(const EvalCurves& curves);

/// Mean of (G - S)^2 over pixels on the unquantised map.
double mse(const SaliencyMap& map, const GroundTruth& gt);

/// pr_roc_curves plus all scalar summaries.
EvalCurves evaluate(const SaliencyMap& map, const GroundTruth& gt, double beta_sq = 0.3);

/// Threshold-wise mean of precision/recall/fpr; max-F and AUC recomputed on
/// the mean curves, MSE averaged. Throws EmptyInput.
EvalCurves aggregate(std::span<const EvalCurves> per_image, double beta_sq = 0.3);

}  // namespace pse
