#include "pse/slic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "pse/error.hpp"

namespace pse {
namespace {

struct Center {
  double l, a, b, x, y;
};

double lab_dist_sq(const Lab& p, double l, double a, double b) {
  const double dl = p.l - l, da = p.a - a, db = p.b - b;
  return dl * dl + da * da + db * db;
}

double gradient_at(const LabImage& img, int x, int y) {
  const int w = img.width(), h = img.height();
  const Lab& right = img(std::min(x + 1, w - 1), y);
  const Lab& left = img(std::max(x - 1, 0), y);
  const Lab& down = img(x, std::min(y + 1, h - 1));
  const Lab& up = img(x, std::max(y - 1, 0));
  return lab_dist_sq(right, left.l, left.a, left.b) + lab_dist_sq(down, up.l, up.a, up.b);
}

// 4-connected components of a label raster.
struct Components {
  std::vector<int> comp_of_pixel;
  std::vector<int> label;
  std::vector<int> size;
};

Components find_components(const Raster<int>& labels) {
  const int w = labels.width(), h = labels.height();
  Components c;
  c.comp_of_pixel.assign(labels.size(), -1);
  std::vector<int> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t start = labels.index(x, y);
      if (c.comp_of_pixel[start] >= 0) continue;
      const int id = static_cast<int>(c.label.size());
      const int lab = labels[start];
      c.label.push_back(lab);
      c.size.push_back(0);
      c.comp_of_pixel[start] = id;
      stack.assign(1, static_cast<int>(start));
      while (!stack.empty()) {
        const int p = stack.back();
        stack.pop_back();
        ++c.size[id];
        const int px = p % w, py = p / w;
        const int nbr[4][2] = {{px - 1, py}, {px + 1, py}, {px, py - 1}, {px, py + 1}};
        for (const auto& n : nbr) {
          if (n[0] < 0 || n[0] >= w || n[1] < 0 || n[1] >= h) continue;
          const std::size_t q = labels.index(n[0], n[1]);
          if (c.comp_of_pixel[q] < 0 && labels[q] == lab) {
            c.comp_of_pixel[q] = id;
            stack.push_back(static_cast<int>(q));
          }
        }
      }
    }
  }
  return c;
}

int find_root(std::vector<int>& parent, int i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

Raster<int> enforce_connectivity(const Raster<int>& labels, int min_size, int& region_count) {
  const int w = labels.width(), h = labels.height();
  const Components comps = find_components(labels);
  const int n = static_cast<int>(comps.label.size());

  // Primary component per label: largest, ties to the earliest in raster order.
  std::map<int, int> primary;
  for (int c = 0; c < n; ++c) {
    auto [it, inserted] = primary.try_emplace(comps.label[c], c);
    if (!inserted && comps.size[c] > comps.size[it->second]) it->second = c;
  }
  std::vector<char> kept(n, 0);
  bool any_kept = false;
  for (const auto& [lab, c] : primary) {
    if (comps.size[c] >= min_size) {
      kept[c] = 1;
      any_kept = true;
    }
  }
  if (!any_kept) {
    const int largest = static_cast<int>(
        std::max_element(comps.size.begin(), comps.size.end()) - comps.size.begin());
    kept[largest] = 1;
  }

  // Shared border length between adjacent components.
  std::vector<std::map<int, int>> border(n);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int c = comps.comp_of_pixel[labels.index(x, y)];
      if (x + 1 < w) {
        const int d = comps.comp_of_pixel[labels.index(x + 1, y)];
        if (d != c) { ++border[c][d]; ++border[d][c]; }
      }
      if (y + 1 < h) {
        const int d = comps.comp_of_pixel[labels.index(x, y + 1)];
        if (d != c) { ++border[c][d]; ++border[d][c]; }
      }
    }
  }

  std::vector<int> pending;
  for (int c = 0; c < n; ++c) {
    if (!kept[c]) pending.push_back(c);
  }
  std::stable_sort(pending.begin(), pending.end(),
                   [&](int a, int b) { return comps.size[a] < comps.size[b]; });

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);

  while (!pending.empty()) {
    std::vector<int> deferred;
    for (const int c : pending) {
      // Border length per destination label, restricted to settled components.
      // Keyed by label so ties resolve to the smaller label.
      std::map<int, std::pair<int, int>> by_label;
      for (const auto& [d, len] : border[c]) {
        const int root = find_root(parent, d);
        if (!kept[root]) continue;
        auto& entry = by_label[comps.label[root]];
        entry.first += len;
        entry.second = root;
      }
      if (by_label.empty()) {
        deferred.push_back(c);
        continue;
      }
      auto best = by_label.begin();
      for (auto it = by_label.begin(); it != by_label.end(); ++it) {
        if (it->second.first > best->second.first) best = it;
      }
      parent[c] = best->second.second;
      kept[c] = 1;
    }
    if (deferred.size() == pending.size()) {
      throw Error(ErrorCode::InvalidGranularity, "segmentation fragments are unreachable");
    }
    pending = std::move(deferred);
  }

  // Renumber in raster order of first appearance.
  std::vector<int> remap(n, -1);
  Raster<int> out(w, h);
  int next = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int root = find_root(parent, comps.comp_of_pixel[i]);
    if (remap[root] < 0) remap[root] = next++;
    out[i] = remap[root];
  }
  region_count = next;
  return out;
}

}  // namespace

Segmentation slic_segment(const LabImage& img, const SlicParams& params) {
  const int w = img.width(), h = img.height();
  const long long pixels = static_cast<long long>(w) * h;
  const int k = params.target_regions;
  if (k < 2 || pixels / 16 < k) {
    throw Error(ErrorCode::InvalidGranularity,
                "target_regions=" + std::to_string(k) + " outside [2, " +
                    std::to_string(pixels / 16) + "]");
  }
  if (!(params.compactness > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "compactness must be positive");
  }
  if (params.iterations < 1) {
    throw Error(ErrorCode::InvalidArgument, "iterations must be at least 1");
  }

  // Grid whose aspect follows the image so cells are roughly square.
  const int nx = std::max(1, static_cast<int>(std::lround(std::sqrt(double(k) * w / h))));
  const int ny = std::max(1, static_cast<int>(std::lround(double(k) / nx)));
  const double cell_w = double(w) / nx;
  const double cell_h = double(h) / ny;
  const double step = std::sqrt(double(pixels) / k);

  Raster<int> labels(w, h);
  for (int y = 0; y < h; ++y) {
    const int gy = std::min(ny - 1, static_cast<int>(y / cell_h));
    for (int x = 0; x < w; ++x) {
      const int gx = std::min(nx - 1, static_cast<int>(x / cell_w));
      labels(x, y) = gy * nx + gx;
    }
  }

  std::vector<Center> centers;
  centers.reserve(static_cast<std::size_t>(nx) * ny);
  for (int gy = 0; gy < ny; ++gy) {
    for (int gx = 0; gx < nx; ++gx) {
      int cx = std::min(w - 1, static_cast<int>((gx + 0.5) * cell_w));
      int cy = std::min(h - 1, static_cast<int>((gy + 0.5) * cell_h));
      // Move the seed off edges: lowest gradient in the 3x3 neighbourhood.
      double best = gradient_at(img, cx, cy);
      int bx = cx, by = cy;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int sx = cx + dx, sy = cy + dy;
          if (sx < 0 || sx >= w || sy < 0 || sy >= h) continue;
          const double g = gradient_at(img, sx, sy);
          if (g < best) { best = g; bx = sx; by = sy; }
        }
      }
      const Lab& p = img(bx, by);
      centers.push_back({p.l, p.a, p.b, double(bx), double(by)});
    }
  }

  const double spatial_weight = (params.compactness / step) * (params.compactness / step);
  const int reach_x = static_cast<int>(std::ceil(std::max(cell_w, step)));
  const int reach_y = static_cast<int>(std::ceil(std::max(cell_h, step)));
  std::vector<double> dist(img.size());
  std::vector<double> sums;

  for (int iter = 0; iter < params.iterations; ++iter) {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    for (std::size_t c = 0; c < centers.size(); ++c) {
      const Center& ctr = centers[c];
      const int x0 = std::max(0, static_cast<int>(ctr.x) - reach_x);
      const int x1 = std::min(w - 1, static_cast<int>(ctr.x) + reach_x);
      const int y0 = std::max(0, static_cast<int>(ctr.y) - reach_y);
      const int y1 = std::min(h - 1, static_cast<int>(ctr.y) + reach_y);
      for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
          const std::size_t i = img.index(x, y);
          const double dx = x - ctr.x, dy = y - ctr.y;
          const double d = lab_dist_sq(img[i], ctr.l, ctr.a, ctr.b) +
                           spatial_weight * (dx * dx + dy * dy);
          if (d < dist[i]) {
            dist[i] = d;
            labels[i] = static_cast<int>(c);
          }
        }
      }
    }

    sums.assign(centers.size() * 6, 0.0);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::size_t i = img.index(x, y);
        double* s = &sums[static_cast<std::size_t>(labels[i]) * 6];
        s[0] += img[i].l; s[1] += img[i].a; s[2] += img[i].b;
        s[3] += x; s[4] += y; s[5] += 1.0;
      }
    }
    for (std::size_t c = 0; c < centers.size(); ++c) {
      const double* s = &sums[c * 6];
      if (s[5] == 0.0) continue;
      centers[c] = {s[0] / s[5], s[1] / s[5], s[2] / s[5], s[3] / s[5], s[4] / s[5]};
    }
  }

  const int min_size = std::max(1, static_cast<int>(cell_w * cell_h / 4.0));
  Segmentation seg;
  seg.labels = enforce_connectivity(labels, min_size, seg.region_count);
  return seg;
}

bool is_valid_segmentation(const Segmentation& seg, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (seg.region_count <= 0) return fail("region_count must be positive");
  std::vector<int> seen(static_cast<std::size_t>(seg.region_count), 0);
  for (const int lab : seg.labels.data()) {
    if (lab < 0 || lab >= seg.region_count) return fail("label out of range");
    seen[static_cast<std::size_t>(lab)] = 1;
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) return fail("unused label");
  const Components comps = find_components(seg.labels);
  if (static_cast<int>(comps.label.size()) != seg.region_count) {
    return fail("a region is not 4-connected");
  }
  return true;
}

}  // namespace pse
