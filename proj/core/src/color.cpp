#include "pse/color.hpp"

#include <array>
#include <cmath>

namespace pse {
namespace {

// D65 reference white, Y normalised to 1.
constexpr double kWhiteX = 0.95047;
constexpr double kWhiteY = 1.0;
constexpr double kWhiteZ = 1.08883;

constexpr double kEpsilon = 216.0 / 24389.0;
constexpr double kKappa = 24389.0 / 27.0;

double srgb_to_linear(double c) {
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double lab_f(double t) {
  return t > kEpsilon ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0;
}

const std::array<double, 256>& linear_table() {
  static const std::array<double, 256> table = [] {
    std::array<double, 256> t{};
    for (int i = 0; i < 256; ++i) t[i] = srgb_to_linear(i / 255.0);
    return t;
  }();
  return table;
}

}  // namespace

Lab srgb_to_lab(Rgb8 rgb) noexcept {
  const auto& lin = linear_table();
  const double r = lin[rgb.r];
  const double g = lin[rgb.g];
  const double b = lin[rgb.b];

  const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
  const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
  const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;

  const double fx = lab_f(x / kWhiteX);
  const double fy = lab_f(y / kWhiteY);
  const double fz = lab_f(z / kWhiteZ);

  Lab out;
  out.l = 116.0 * fy - 16.0;
  out.a = 500.0 * (fx - fy);
  out.b = 200.0 * (fy - fz);
  // Black maps through the linear segment to L = 0 up to rounding.
  if (out.l < 0.0) out.l = 0.0;
  if (out.l > 100.0) out.l = 100.0;
  return out;
}

LabImage rgb_to_lab(const RgbImage& img) {
  LabImage out(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i) out[i] = srgb_to_lab(img[i]);
  return out;
}

}  // namespace pse
