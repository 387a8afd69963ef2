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

#include <doctest.h>

#include <cstring>
#include <random>

#include <omp.h>

#include "hopfmin/energy.hpp"
#include "hopfmin/smooth_map.hpp"

using namespace hopfmin;

namespace {

bool same_bits(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(Complex)) == 0;
}

}  // namespace

TEST_CASE("serial and OpenMP kernels agree bit for bit") {
  omp_set_num_threads(4);
  std::mt19937_64 rng(17);
  const auto D = make_disk_polygon(96, 1.0);
  const auto m = std::make_shared<TriangleMesh>(triangulate(D, 0.04));
  const auto s = random_smooth_map(rng, D, 6, 0.6, {Complex(1.2, 0.1), Complex(0.2, 0.3), 0.0});
  const auto f = DiscreteMap::sample(m, [&](Point z) { return s(z); });
  const auto fr = ReferenceFrames::build(*m);

  std::vector<kernels::Jet> js(fr.num_triangles()), jo(fr.num_triangles());
  kernels::serial::wirtinger(fr, f.targets, std::span<kernels::Jet>(js));
  kernels::omp::wirtinger(fr, f.targets, std::span<kernels::Jet>(jo));
  CHECK(std::memcmp(js.data(), jo.data(), js.size() * sizeof(kernels::Jet)) == 0);

  for (auto kind : {Functional::MeanDistortion, Functional::InverseEnergy, Functional::WeightedDirichlet}) {
    std::optional<WeightFn> phi;
    if (kind == Functional::WeightedDirichlet) phi = WeightFn::parse("quad:1,0.5");
    const Objective serial(m, kind, 2.3, phi, false), parallel(m, kind, 2.3, phi, true);
    std::vector<Complex> gs, gp;
    const double es = serial.value_and_gradient(f.targets, gs);
    const double ep = parallel.value_and_gradient(f.targets, gp);
    CHECK(std::memcmp(&es, &ep, sizeof(double)) == 0);
    CHECK(same_bits(gs, gp));
  }

  const auto a = mean_distortion(f, 2.0, Mode::Definition, false), b = mean_distortion(f, 2.0, Mode::Definition, true);
  CHECK(a.per_triangle == b.per_triangle);
  CHECK(std::memcmp(&a.total, &b.total, sizeof(double)) == 0);
  const auto c = inverse_energy(invert(f), 3.0, false), d = inverse_energy(invert(f), 3.0, true);
  CHECK(c.per_triangle == d.per_triangle);
}

TEST_CASE("gather covers every slot once") {
  const auto m = triangulate(make_rectangle(1, 2), 0.2);
  const auto fr = ReferenceFrames::build(m);
  std::vector<int> seen(3 * fr.num_triangles(), 0);
  for (int v = 0; v < fr.num_vertices(); ++v)
    for (int k = fr.gather_offsets[v]; k < fr.gather_offsets[v + 1]; ++k) {
      const int slot = fr.gather_slots[k];
      ++seen[slot];
      CHECK(fr.tris[slot / 3][slot % 3] == v);
    }
  for (int x : seen) CHECK(x == 1);
}
