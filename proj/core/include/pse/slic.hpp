#pragma once

#include <string>

#include "pse/image.hpp"

namespace pse {

/// Pixel-to-region labelling. Labels are dense in [0, region_count).
struct Segmentation {
  Raster<int> labels;
  int region_count = 0;

  int width() const noexcept { return labels.width(); }
  int height() const noexcept { return labels.height(); }
};

struct SlicParams {
  int target_regions = 300;
  double compactness = 10.0;
  int iterations = 10;
};

/// SLIC superpixels in CIELab+xy, seeded on a regular grid.
///
/// After clustering, every 4-connected fragment that is not the largest piece
/// of its label, and every piece smaller than a quarter of the grid cell area,
/// is merged into the neighbour it shares the longest border with (ties go to
/// the smaller label). Labels are then renumbered in raster order of first
/// appearance, so the output is a pure function of the inputs.
///
/// Throws InvalidGranularity unless 2 <= target_regions <= width*height/16.
Segmentation slic_segment(const LabImage& img, const SlicParams& params);

/// Checks the Segmentation invariants: labels in range, every label used,
/// every region 4-connected. On failure writes a reason into `why`.
bool is_valid_segmentation(const Segmentation& seg, std::string* why = nullptr);

}  // namespace pse
