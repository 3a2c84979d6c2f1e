#include "brute_force.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace pse::testing {

BruteCurves brute_force_metrics(const std::vector<double>& map, const std::vector<int>& mask,
                                double beta_sq) {
  BruteCurves out;
  const std::size_t n = map.size();
  long long positives = 0;
  for (const int m : mask) positives += m;
  const long long negatives = static_cast<long long>(n) - positives;

  for (int tau = 0; tau < 256; ++tau) {
    long long detected = 0, tp = 0, fp = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const int level = static_cast<int>(std::floor(255.0 * std::min(1.0, std::max(0.0, map[i])) + 0.5));
      if (level >= tau) {
        ++detected;
        if (mask[i]) ++tp; else ++fp;
      }
    }
    out.detected[tau] = detected;
    out.true_positives[tau] = tp;
    out.precision[tau] = detected == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(detected);
    out.recall[tau] = static_cast<double>(tp) / static_cast<double>(positives);
    out.fpr[tau] = static_cast<double>(fp) / static_cast<double>(negatives);

    const double p = out.precision[tau], r = out.recall[tau];
    if (p > 0.0 || r > 0.0) {
      out.max_f_beta = std::max(out.max_f_beta, (1 + beta_sq) * p * r / (beta_sq * p + r));
    }
  }

  // ROC points sorted by (fpr, tpr), endpoints added, trapezoid rule.
  std::vector<std::pair<double, double>> pts{{0.0, 0.0}, {1.0, 1.0}};
  for (int tau = 0; tau < 256; ++tau) pts.emplace_back(out.fpr[tau], out.recall[tau]);
  std::sort(pts.begin(), pts.end());
  for (std::size_t k = 1; k < pts.size(); ++k) {
    out.auc += (pts[k].first - pts[k - 1].first) * (pts[k].second + pts[k - 1].second) / 2.0;
  }

  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += (mask[i] - map[i]) * (mask[i] - map[i]);
  out.mse = acc / static_cast<double>(n);
  return out;
}

std::array<double, 3> lab_to_srgb(double l, double a, double b) {
  const double fy = (l + 16.0) / 116.0;
  const double fx = fy + a / 500.0;
  const double fz = fy - b / 200.0;
  const double eps = 216.0 / 24389.0, kappa = 24389.0 / 27.0;
  auto finv = [&](double f) { return f * f * f > eps ? f * f * f : (116.0 * f - 16.0) / kappa; };
  const double x = 0.95047 * finv(fx);
  const double y = l > kappa * eps ? fy * fy * fy : l / kappa;
  const double z = 1.08883 * finv(fz);

  const double lin[3] = {
      3.2404542 * x - 1.5371385 * y - 0.4985314 * z,
      -0.9692660 * x + 1.8760108 * y + 0.0415560 * z,
      0.0556434 * x - 0.2040259 * y + 1.0572252 * z,
  };
  std::array<double, 3> rgb{};
  for (int c = 0; c < 3; ++c) {
    const double v = lin[c] <= 0.0031308 ? 12.92 * lin[c] : 1.055 * std::pow(lin[c], 1 / 2.4) - 0.055;
    rgb[c] = 255.0 * v;
  }
  return rgb;
}

}  // namespace pse::testing
