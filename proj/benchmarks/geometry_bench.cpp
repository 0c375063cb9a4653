// Copyright 2026 The mmplan Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "mmplan/geometry/kdtree.hpp"
#include "mmplan/geometry/ransac.hpp"
#include "mmplan/geometry/sampling.hpp"
#include "mmplan/rng.hpp"

namespace {

using namespace mmplan;

std::vector<Vec3> cloud(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vec3> pts(n);
  for (Vec3& p : pts) p = Vec3(rng.uniform(0, 4), rng.uniform(0, 4), rng.uniform(0, 1));
  return pts;
}

void BM_KdTreeBuild(benchmark::State& state) {
  const auto pts = cloud(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(KdTree(pts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KdTreeBuild)->Arg(10'000)->Arg(100'000);

void BM_KdTreeNearest(benchmark::State& state) {
  const KdTree tree(cloud(static_cast<std::size_t>(state.range(0)), 2));
  const auto queries = cloud(1024, 3);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(tree.nearest(queries[i++ & 1023]));
}
BENCHMARK(BM_KdTreeNearest)->Arg(10'000)->Arg(100'000);

void BM_RansacPlane(benchmark::State& state) {
  Rng rng(4);
  std::vector<Vec3> pts;
  for (int i = 0; i < 1400; ++i) pts.emplace_back(rng.uniform(0, 0.6), rng.uniform(0, 0.3), rng.normal(0, 0.002));
  for (int i = 0; i < 600; ++i) pts.emplace_back(rng.uniform(0, 0.6), rng.uniform(0, 0.3), rng.uniform(-0.3, 0.3));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(ransac_plane(pts, {0.005, 1000, 0.3}, seed++));
}
BENCHMARK(BM_RansacPlane)->Unit(benchmark::kMillisecond);

void BM_FarthestPointSample(benchmark::State& state) {
  const auto pts = cloud(static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(farthest_point_sample(pts, 16, 0));
}
BENCHMARK(BM_FarthestPointSample)->Arg(50)->Arg(5000);

}  // namespace
