#include "pse/regions.hpp"

#include "pse/error.hpp"

namespace pse {

std::vector<Region> extract_regions(const LabImage& img, const Segmentation& seg) {
  if (!img.same_shape(seg.labels)) {
    throw Error(ErrorCode::DimensionMismatch, "segmentation does not match image size");
  }
  const int w = img.width(), h = img.height();
  std::vector<Region> regions(static_cast<std::size_t>(seg.region_count));
  std::vector<double> sum_l(regions.size()), sum_a(regions.size()), sum_b(regions.size());
  std::vector<double> sum_x(regions.size()), sum_y(regions.size());

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = img.index(x, y);
      const int lab = seg.labels[i];
      if (lab < 0 || lab >= seg.region_count) {
        throw Error(ErrorCode::DimensionMismatch, "label out of range");
      }
      const auto r = static_cast<std::size_t>(lab);
      sum_l[r] += img[i].l;
      sum_a[r] += img[i].a;
      sum_b[r] += img[i].b;
      sum_x[r] += x;
      sum_y[r] += y;
      ++regions[r].area;
      if (x == 0 || y == 0 || x == w - 1 || y == h - 1) regions[r].is_boundary = true;
    }
  }
  for (std::size_t r = 0; r < regions.size(); ++r) {
    Region& reg = regions[r];
    reg.id = static_cast<int>(r);
    if (reg.area == 0) continue;
    const double n = static_cast<double>(reg.area);
    reg.mean_lab = {sum_l[r] / n, sum_a[r] / n, sum_b[r] / n};
    reg.centroid_x = sum_x[r] / n;
    reg.centroid_y = sum_y[r] / n;
  }
  return regions;
}

}  // namespace pse
