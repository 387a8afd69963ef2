// Copyright 2026 The hopfmin Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels against their OpenMP versions, plus a full
// objective evaluation both ways. Mesh sizes are the benchmark argument
// (target edge = 1 / arg on the unit disk polygon).

#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <vector>

#include "hopfmin/energy.hpp"
#include "hopfmin/smooth_map.hpp"

using namespace hopfmin;

namespace {

struct Fixture {
  MeshPtr mesh;
  ReferenceFrames frames;
  std::vector<Point> targets;
};

const Fixture& fixture(int inverse_edge) {
  static std::vector<std::unique_ptr<Fixture>> cache(1024);
  auto& slot = cache[inverse_edge];
  if (!slot) {
    slot = std::make_unique<Fixture>();
    const Domain d = make_disk_polygon(128, 1.0);
    slot->mesh = std::make_shared<TriangleMesh>(triangulate(d, 1.0 / inverse_edge));
    slot->frames = ReferenceFrames::build(*slot->mesh);
    std::mt19937_64 rng(1);
    const auto s = random_smooth_map(rng, d, 6, 0.5, random_affine(rng, 0.4));
    slot->targets = DiscreteMap::sample(slot->mesh, [&](Point z) { return s(z); }).targets;
  }
  return *slot;
}

template <bool Parallel>
void BM_Wirtinger(benchmark::State& state) {
  const auto& f = fixture(static_cast<int>(state.range(0)));
  std::vector<kernels::Jet> out(f.frames.num_triangles());
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::omp::wirtinger(f.frames, f.targets, out);
    else
      kernels::serial::wirtinger(f.frames, f.targets, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * f.frames.num_triangles());
}

template <bool Parallel>
void BM_EvaluateInverseEnergy(benchmark::State& state) {
  const auto& f = fixture(static_cast<int>(state.range(0)));
  const int n = f.frames.num_triangles();
  std::vector<double> energy(n);
  std::vector<Complex> grad3(3 * static_cast<std::size_t>(n));
  const densities::InverseEnergy density{2.0};
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::omp::evaluate(f.frames, f.targets, density, std::span<double>(energy), std::span<Complex>(grad3));
    else
      kernels::serial::evaluate(f.frames, f.targets, density, std::span<double>(energy), std::span<Complex>(grad3));
    benchmark::DoNotOptimize(energy.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}

template <bool Parallel>
void BM_Gather(benchmark::State& state) {
  const auto& f = fixture(static_cast<int>(state.range(0)));
  std::vector<Complex> grad3(3 * static_cast<std::size_t>(f.frames.num_triangles()), Complex(1.0, -1.0));
  std::vector<Complex> out(f.frames.num_vertices());
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::omp::gather(f.frames, grad3, out);
    else
      kernels::serial::gather(f.frames, grad3, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * f.frames.num_vertices());
}

template <bool Parallel>
void BM_ObjectiveGradient(benchmark::State& state) {
  const auto& f = fixture(static_cast<int>(state.range(0)));
  const Objective obj(f.mesh, Functional::WeightedDirichlet, 0.0, WeightFn::parse("quad:1,0.5"), Parallel);
  std::vector<Complex> grad;
  for (auto _ : state) benchmark::DoNotOptimize(obj.value_and_gradient(f.targets, grad));
  state.SetItemsProcessed(state.iterations() * f.frames.num_triangles());
}

}  // namespace

BENCHMARK(BM_Wirtinger<false>)->Arg(20)->Arg(80)->Arg(320);
BENCHMARK(BM_Wirtinger<true>)->Arg(20)->Arg(80)->Arg(320);
BENCHMARK(BM_EvaluateInverseEnergy<false>)->Arg(20)->Arg(80)->Arg(320);
BENCHMARK(BM_EvaluateInverseEnergy<true>)->Arg(20)->Arg(80)->Arg(320);
BENCHMARK(BM_Gather<false>)->Arg(20)->Arg(80)->Arg(320);
BENCHMARK(BM_Gather<true>)->Arg(20)->Arg(80)->Arg(320);
BENCHMARK(BM_ObjectiveGradient<false>)->Arg(20)->Arg(80)->Arg(320);
BENCHMARK(BM_ObjectiveGradient<true>)->Arg(20)->Arg(80)->Arg(320);

BENCHMARK_MAIN();
