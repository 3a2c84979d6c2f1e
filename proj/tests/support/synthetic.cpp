#include "synthetic.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <random>

#include "pse/color.hpp"
#include "pse/image_io.hpp"

namespace pse::testing {
namespace {

// Portable draws from the raw engine output; std distributions differ
// between standard libraries.
struct Rng {
  std::mt19937 engine;
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(engine() % static_cast<std::uint32_t>(hi - lo + 1));
  }
  double uniform01() { return engine() / 4294967296.0; }
};

std::uint8_t clamp8(int v) { return static_cast<std::uint8_t>(std::clamp(v, 0, 255)); }

double lab_distance(Rgb8 a, Rgb8 b) {
  const Lab la = srgb_to_lab(a), lb = srgb_to_lab(b);
  return std::sqrt((la.l - lb.l) * (la.l - lb.l) + (la.a - lb.a) * (la.a - lb.a) +
                   (la.b - lb.b) * (la.b - lb.b));
}

constexpr std::array<Rgb8, 8> kObjectPalette = {{
    {220, 30, 30},  {30, 160, 40}, {40, 60, 210}, {230, 200, 20},
    {200, 40, 180}, {20, 170, 190}, {240, 120, 20}, {120, 30, 150},
}};

}  // namespace

std::vector<SyntheticSample> make_synthetic_suite(int count, int size, std::uint32_t seed) {
  Rng rng{std::mt19937(seed)};
  std::vector<SyntheticSample> suite;
  suite.reserve(static_cast<std::size_t>(count));
  const int margin = size / 10;

  for (int k = 0; k < count; ++k) {
    const int gray = rng.uniform_int(90, 170);
    const Rgb8 background{clamp8(gray + rng.uniform_int(-12, 12)),
                          clamp8(gray + rng.uniform_int(-12, 12)),
                          clamp8(gray + rng.uniform_int(-12, 12))};
    Rgb8 object = kObjectPalette[static_cast<std::size_t>(k) % kObjectPalette.size()];
    for (int tries = 0; lab_distance(object, background) < 40.0 && tries < 8; ++tries) {
      object = kObjectPalette[static_cast<std::size_t>(rng.uniform_int(0, 7))];
    }

    const Shape shape = k % 2 == 0 ? Shape::Rectangle : Shape::Ellipse;
    const int ow = rng.uniform_int(size * 3 / 10, size * 6 / 10);
    const int oh = rng.uniform_int(size * 3 / 10, size * 6 / 10);
    const int x0 = rng.uniform_int(margin, size - margin - ow);
    const int y0 = rng.uniform_int(margin, size - margin - oh);

    SyntheticSample s;
    s.name = "synth_" + std::string(k < 10 ? "0" : "") + std::to_string(k);
    s.image = RgbImage(size, size);
    s.mask = GrayImage(size, size, 0);
    const double cx = x0 + ow / 2.0, cy = y0 + oh / 2.0;
    for (int y = 0; y < size; ++y) {
      for (int x = 0; x < size; ++x) {
        bool inside;
        if (shape == Shape::Rectangle) {
          inside = x >= x0 && x < x0 + ow && y >= y0 && y < y0 + oh;
        } else {
          const double dx = (x + 0.5 - cx) / (ow / 2.0), dy = (y + 0.5 - cy) / (oh / 2.0);
          inside = dx * dx + dy * dy <= 1.0;
        }
        const Rgb8 base = inside ? object : background;
        const int noise = 4;
        s.image(x, y) = {clamp8(base.r + rng.uniform_int(-noise, noise)),
                         clamp8(base.g + rng.uniform_int(-noise, noise)),
                         clamp8(base.b + rng.uniform_int(-noise, noise))};
        s.mask(x, y) = inside ? 255 : 0;
      }
    }
    suite.push_back(std::move(s));
  }
  return suite;
}

void write_suite(const std::vector<SyntheticSample>& suite, const std::filesystem::path& dir,
                 bool invert_gt) {
  std::filesystem::create_directories(dir / "images");
  std::filesystem::create_directories(dir / "gt");
  for (const auto& s : suite) {
    write_png(dir / "images" / (s.name + ".png"), s.image);
    GrayImage gt = s.mask;
    if (invert_gt) {
      for (auto& v : gt.data()) v = static_cast<std::uint8_t>(255 - v);
    }
    write_png(dir / "gt" / (s.name + ".png"), gt);
  }
}

std::filesystem::path make_temp_dir(const std::string& prefix) {
  static std::atomic<int> counter{0};
  std::random_device rd;
  for (;;) {
    auto dir = std::filesystem::temp_directory_path() /
               (prefix + "_" + std::to_string(rd()) + "_" + std::to_string(counter++));
    if (std::filesystem::create_directories(dir)) return dir;
  }
}

}  // namespace pse::testing
