#pragma once

#include <vector>

#include "pse/image.hpp"
#include "pse/slic.hpp"

namespace pse {

struct Region {
  int id = 0;
  Lab mean_lab;
  double centroid_x = 0.0;
  double centroid_y = 0.0;
  long long area = 0;
  /// True iff the region owns a pixel in the first/last row or column.
  bool is_boundary = false;
};

/// One Region per label, ordered by id. Throws DimensionMismatch when the
/// segmentation and image shapes differ.
std::vector<Region> extract_regions(const LabImage& img, const Segmentation& seg);

}  // namespace pse
