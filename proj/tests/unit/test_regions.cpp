#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "pse/color.hpp"
#include "pse/error.hpp"
#include "pse/regions.hpp"
#include "random_graphs.hpp"
#include "synthetic.hpp"

namespace pse {
namespace {

Segmentation labelled(int w, int h, std::vector<int> labels, int k) {
  return {Raster<int>(w, h, std::move(labels)), k};
}

TEST(ExtractRegions, ConstantImageIsOneBoundaryRegion) {
  const Lab c{40.0, 5.0, -7.0};
  const LabImage img(6, 4, c);
  const auto regions = extract_regions(img, labelled(6, 4, std::vector<int>(24, 0), 1));
  ASSERT_EQ(regions.size(), 1u);
  EXPECT_NEAR(regions[0].mean_lab.l, c.l, 1e-12);
  EXPECT_NEAR(regions[0].mean_lab.a, c.a, 1e-12);
  EXPECT_NEAR(regions[0].mean_lab.b, c.b, 1e-12);
  EXPECT_EQ(regions[0].area, 24);
  EXPECT_TRUE(regions[0].is_boundary);
}

TEST(ExtractRegions, VerticalHalves) {
  std::vector<int> labels(8 * 4);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 8; ++x) labels[y * 8 + x] = x < 4 ? 0 : 1;
  }
  const auto regions = extract_regions(LabImage(8, 4), labelled(8, 4, labels, 2));
  ASSERT_EQ(regions.size(), 2u);
  EXPECT_DOUBLE_EQ(regions[0].centroid_x, 1.5);
  EXPECT_DOUBLE_EQ(regions[0].centroid_y, 1.5);
  EXPECT_DOUBLE_EQ(regions[1].centroid_x, 5.5);
  EXPECT_DOUBLE_EQ(regions[1].centroid_y, 1.5);
  EXPECT_TRUE(regions[0].is_boundary);
  EXPECT_TRUE(regions[1].is_boundary);
}

TEST(ExtractRegions, InteriorPixelIsNotBoundary) {
  // 3x3 with the centre pixel as its own region; the 8 border pixels are
  // exactly the ring around it.
  const std::vector<int> labels = {0, 0, 0, 0, 1, 0, 0, 0, 0};
  const auto regions = extract_regions(LabImage(3, 3), labelled(3, 3, labels, 2));
  EXPECT_TRUE(regions[0].is_boundary);
  EXPECT_FALSE(regions[1].is_boundary);
  EXPECT_EQ(regions[1].area, 1);
  EXPECT_EQ(regions[0].area, 8);
}

TEST(ExtractRegions, DimensionMismatch) {
  try {
    extract_regions(LabImage(4, 4), labelled(3, 3, std::vector<int>(9, 0), 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(ExtractRegions, AreasSumAndPermutationEquivariance) {
  const auto suite = testing::make_synthetic_suite(2, 64, 5);
  testing::Rng rng(3);
  for (const auto& s : suite) {
    const LabImage lab = rgb_to_lab(s.image);
    const Segmentation seg = slic_segment(lab, {40, 10.0, 10});
    const auto regions = extract_regions(lab, seg);
    long long total = 0;
    for (const auto& r : regions) total += r.area;
    EXPECT_EQ(total, 64 * 64);

    std::vector<int> perm(static_cast<std::size_t>(seg.region_count));
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = perm.size(); i > 1; --i) {
      std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.uniform_int(0, int(i) - 1))]);
    }
    Segmentation relabelled = seg;
    for (auto& l : relabelled.labels.data()) l = perm[static_cast<std::size_t>(l)];
    const auto permuted = extract_regions(lab, relabelled);
    for (int r = 0; r < seg.region_count; ++r) {
      const Region& a = regions[r];
      const Region& b = permuted[perm[r]];
      EXPECT_EQ(b.id, perm[r]);
      EXPECT_EQ(a.area, b.area);
      EXPECT_EQ(a.is_boundary, b.is_boundary);
      EXPECT_EQ(a.mean_lab, b.mean_lab);
      EXPECT_EQ(a.centroid_x, b.centroid_x);
      EXPECT_EQ(a.centroid_y, b.centroid_y);
    }
  }
}

}  // namespace
}  // namespace pse
