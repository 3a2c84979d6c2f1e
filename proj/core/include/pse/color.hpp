#pragma once

#include "pse/image.hpp"

namespace pse {

/// sRGB (IEC 61966-2-1 transfer curve) to CIELab under the D65 white point.
Lab srgb_to_lab(Rgb8 rgb) noexcept;

LabImage rgb_to_lab(const RgbImage& img);

}  // namespace pse
