#include <benchmark/benchmark.h>

#include <random>

#include "pse/color.hpp"
#include "pse/graph.hpp"
#include "pse/pipeline.hpp"
#include "pse/saliency.hpp"
#include "pse/slic.hpp"
#include "pse/solve.hpp"

namespace {

// Square grid graph with 2-hop edges and the border as prior.
pse::SystemMatrix grid_system(int side) {
  std::vector<pse::Edge> edges;
  std::vector<double> prior(static_cast<std::size_t>(side) * side, 0.0);
  auto id = [side](int x, int y) { return y * side + x; };
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      if (x + 1 < side) edges.push_back({id(x, y), id(x + 1, y), 0.7});
      if (y + 1 < side) edges.push_back({id(x, y), id(x, y + 1), 0.7});
      if (x + 2 < side) edges.push_back({id(x, y), id(x + 2, y), 0.2});
      if (y + 2 < side) edges.push_back({id(x, y), id(x, y + 2), 0.2});
      if (x == 0 || y == 0 || x == side - 1 || y == side - 1) prior[id(x, y)] = 0.3;
    }
  }
  return pse::assemble_h(pse::SaliencyGraph::from_edges(side * side, std::move(edges), prior));
}

pse::RgbImage test_image(int size) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> noise(-6, 6);
  pse::RgbImage img(size, size);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const bool inside = std::abs(x - size / 2) < size / 5 && std::abs(y - size / 3) < size / 4;
      const int base = inside ? 60 : 170;
      img(x, y) = {static_cast<std::uint8_t>(base + noise(rng)),
                   static_cast<std::uint8_t>((inside ? 150 : 165) + noise(rng)),
                   static_cast<std::uint8_t>((inside ? 40 : 160) + noise(rng))};
    }
  }
  return img;
}

void BM_SolveDense(benchmark::State& state) {
  const auto h = grid_system(static_cast<int>(state.range(0)));
  pse::SolveOptions opts;
  opts.method = pse::SolveMethod::DenseCholesky;
  const std::vector<double> b(static_cast<std::size_t>(h.size()), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(pse::solve_spd(h, b, opts));
  state.SetLabel("n=" + std::to_string(h.size()));
}
BENCHMARK(BM_SolveDense)->Arg(12)->Arg(18)->Arg(22)->Unit(benchmark::kMillisecond);

void BM_SolveCg(benchmark::State& state) {
  const auto h = grid_system(static_cast<int>(state.range(0)));
  pse::SolveOptions opts;
  opts.method = pse::SolveMethod::ConjugateGradient;
  const std::vector<double> b(static_cast<std::size_t>(h.size()), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(pse::solve_spd(h, b, opts));
  state.SetLabel("n=" + std::to_string(h.size()));
}
BENCHMARK(BM_SolveCg)->Arg(12)->Arg(18)->Arg(22)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_SmallestEigenpair(benchmark::State& state) {
  const auto h = grid_system(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pse::smallest_eigenpair(h));
}
BENCHMARK(BM_SmallestEigenpair)->Arg(18)->Unit(benchmark::kMillisecond);

void BM_Slic(benchmark::State& state) {
  const auto lab = pse::rgb_to_lab(test_image(256));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pse::slic_segment(lab, {static_cast<int>(state.range(0)), 10.0, 10}));
  }
}
BENCHMARK(BM_Slic)->Arg(300)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_Pipeline(benchmark::State& state) {
  const auto img = test_image(static_cast<int>(state.range(0)));
  pse::PipelineConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(pse::compute_saliency(img, config));
}
BENCHMARK(BM_Pipeline)->Arg(128)->Arg(300)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
