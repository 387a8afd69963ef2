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

#include <cmath>
#include <numbers>
#include <random>

#include "hopfmin/locate.hpp"
#include "hopfmin/mapping.hpp"
#include "hopfmin/smooth_map.hpp"

using namespace hopfmin;

namespace {

MeshPtr square_mesh(double h) { return std::make_shared<TriangleMesh>(triangulate(make_rectangle(1, 1), h)); }
MeshPtr disk_mesh(double h) { return std::make_shared<TriangleMesh>(triangulate(make_disk_polygon(64, 1.0), h)); }

DiscreteMap affine_map(MeshPtr m, AffineMap a) { return DiscreteMap::sample(std::move(m), a); }

}  // namespace

TEST_CASE("derivatives of affine maps") {
  const auto m = square_mesh(0.25);
  SUBCASE("identity") {
    for (const auto& d : derivatives(DiscreteMap::identity(m))) {
      CHECK(std::abs(d.fz - 1.0) < 1e-14);
      CHECK(std::abs(d.fzb) < 1e-14);
      CHECK(d.J == doctest::Approx(1.0));
      CHECK(d.K == doctest::Approx(1.0));
    }
  }
  SUBCASE("z + conj(z)/2") {
    for (const auto& d : derivatives(affine_map(m, {1.0, 0.5, 0.0}))) {
      CHECK(std::abs(d.fz - 1.0) < 1e-14);
      CHECK(std::abs(d.fzb - 0.5) < 1e-14);
      CHECK(std::abs(d.J - 0.75) < 1e-14);
      CHECK(std::abs(d.K - 5.0 / 3.0) < 1e-14);
    }
  }
  SUBCASE("reflection is flagged") {
    for (const auto& d : derivatives(affine_map(m, {0.0, 1.0, 0.0}))) {
      CHECK(std::abs(d.fzb - 1.0) < 1e-14);
      CHECK(d.J == doctest::Approx(-1.0));
      CHECK_FALSE(d.orientation_ok);
    }
  }
  SUBCASE("conformal maps have K = 1 exactly") {
    for (const auto& d : derivatives(affine_map(m, {Complex(0.3, 1.7), 0.0, Complex(2, -1)}))) CHECK(d.K == 1.0);
  }
  SUBCASE("flag matches the image orientation") {
    auto f = affine_map(m, {1.0, 0.2, 0.0});
    f.targets[m->num_vertices() - 1] += Point(0.6, 0.6);  // fold an interior vertex over
    const auto d = derivatives(f);
    for (int t = 0; t < m->num_triangles(); ++t) {
      const Tri& tr = m->triangles[t];
      CHECK(d[t].orientation_ok == (orient(f.targets[tr[0]], f.targets[tr[1]], f.targets[tr[2]]) > 0));
    }
  }
}

TEST_CASE("distortion from random affine maps") {
  std::mt19937_64 rng(11);
  const auto m = disk_mesh(0.3);
  for (int k = 0; k < 20; ++k) {
    const AffineMap a = random_affine(rng, 0.95);
    const double A = std::norm(a.a), B = std::norm(a.b);
    for (const auto& d : derivatives(affine_map(m, a))) CHECK(std::abs(d.K - (A + B) / (A - B)) <= 1e-12 * d.K);
  }
}

TEST_CASE("inverse") {
  const auto m = disk_mesh(0.2);
  SUBCASE("identity") {
    const auto h = invert(DiscreteMap::identity(m));
    for (int v = 0; v < m->num_vertices(); ++v) CHECK(std::abs(h.targets[v] - m->vertices[v]) < 1e-15);
  }
  SUBCASE("inverse derivatives") {
    const auto f = affine_map(m, {1.0, 0.5, 0.0});
    for (const auto& d : derivatives(invert(f))) {
      CHECK(std::abs(d.fz - 1.0 / 0.75) < 1e-12);
      CHECK(std::abs(d.fzb + 0.5 / 0.75) < 1e-12);
    }
  }
  SUBCASE("K is inversion invariant") {
    std::mt19937_64 rng(3);
    const auto s = random_smooth_map(rng, make_disk_polygon(64, 1.0), 4, 0.5, {Complex(1.2, 0.1), Complex(0.3, -0.2), 0});
    const auto f = DiscreteMap::sample(m, [&](Point z) { return s(z); });
    const auto d = derivatives(f), di = derivatives(invert(f));
    for (std::size_t t = 0; t < d.size(); ++t) CHECK(std::abs(d[t].K - di[t].K) <= 1e-10 * d[t].K);
  }
  SUBCASE("inverse after map is the identity") {
    const auto f = affine_map(m, {Complex(1, 0.2), 0.4, Complex(0.1, 0)});
    const auto back = compose(invert(f), f);
    CHECK(max_vertex_distance(back, DiscreteMap::identity(m)) <= 1e-10);
  }
  SUBCASE("flipped triangles are listed") {
    try {
      invert(affine_map(m, {0.0, 1.0, 0.0}));
      FAIL("inverted a reflection");
    } catch (const NumericalError& e) {
      CHECK(std::string(e.what()).find("not invertible as orientation-preserving map") != std::string::npos);
    }
  }
}

TEST_CASE("compose") {
  const auto m = disk_mesh(0.2);
  SUBCASE("identity outer") {
    const auto f = affine_map(m, {0.5, 0.1, Complex(0.1, 0.1)});
    const auto id = DiscreteMap::identity(m);
    CHECK(max_vertex_distance(compose(id, f), f) <= 1e-15);
  }
  SUBCASE("rotations") {
    const double a = 0.7, b = -1.9;
    // Inner map on a smaller disk so every rotated vertex stays inside the outer mesh.
    const auto inner = std::make_shared<TriangleMesh>(triangulate(make_disk_polygon(64, 0.8), 0.15));
    const auto ra = DiscreteMap::sample(m, [&](Point z) { return std::polar(1.0, a) * z; });
    const auto rb = DiscreteMap::sample(inner, [&](Point z) { return std::polar(1.0, b) * z; });
    const auto c = compose(ra, rb);
    for (int v = 0; v < inner->num_vertices(); ++v)
      CHECK(std::abs(c.targets[v] - std::polar(1.0, a + b) * inner->vertices[v]) < 1e-12);
  }
  SUBCASE("affine pair against closed form") {
    const auto X = square_mesh(0.1);
    const AffineMap h{1.0, 0.5, 0.0}, H{1.0, 0.25, 0.0};
    const auto big = std::make_shared<TriangleMesh>(triangulate(make_rectangle(3, 3, {-1, -1}), 0.2));
    const auto f = compose(invert(affine_map(big, H)), affine_map(X, h));
    const AffineMap exact = H.inverse().after(h);
    for (int v = 0; v < X->num_vertices(); ++v) CHECK(std::abs(f.targets[v] - exact(X->vertices[v])) < 1e-10);
  }
  SUBCASE("outside point is reported") {
    const auto f = affine_map(m, {2.0, 0.0, 0.0});
    CHECK_THROWS_AS(compose(DiscreteMap::identity(m), f), NumericalError);
  }
}

TEST_CASE("point location") {
  const auto m = disk_mesh(0.15);
  PointLocator loc(m);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 500; ++k) {
    const Point p(u(rng), u(rng));
    const auto l = loc.locate(p);
    if (!make_disk_polygon(64, 1.0).contains(p)) continue;
    REQUIRE(l);
    const Tri& t = m->triangles[l->triangle];
    const Point q = l->bary[0] * m->vertices[t[0]] + l->bary[1] * m->vertices[t[1]] + l->bary[2] * m->vertices[t[2]];
    CHECK(std::abs(p - q) < 1e-14);
    for (double b : l->bary) CHECK(b >= -1e-14);
  }
  // A shared vertex resolves to its lowest-index incident triangle.
  const auto topo = MeshTopology::build(*m);
  for (int v = 0; v < m->num_vertices(); ++v) {
    const auto l = loc.locate(m->vertices[v]);
    REQUIRE(l);
    CHECK(l->triangle == topo.vertex_triangles[v].front());
  }
  CHECK_FALSE(loc.locate({3.0, 0.0}));
}

TEST_CASE("smooth maps") {
  std::mt19937_64 rng(9);
  const auto D = make_disk_polygon(64, 1.0);
  const auto s = random_smooth_map(rng, D, 5, 0.6, {Complex(1.1, 0.2), Complex(0.2, 0.1), 0.0});
  // Boundary is untouched by the bumps.
  for (const auto& v : D.vertices) CHECK(std::abs(s(v) - s.affine(v)) < 1e-15);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  for (int k = 0; k < 100; ++k) {
    const Point z(u(rng), u(rng));
    CHECK(std::abs(s.inverse(s(z)) - z) < 1e-13);
    // Wirtinger derivatives against central differences.
    const double h = 1e-6;
    const Complex dx = (s(z + h) - s(z - h)) / (2 * h), dy = (s(z + Complex(0, h)) - s(z - Complex(0, h))) / (2 * h);
    const auto [fz, fzb] = s.wirtinger(z);
    CHECK(std::abs(fz - 0.5 * (dx - Complex(0, 1) * dy)) < 1e-8);
    CHECK(std::abs(fzb - 0.5 * (dx + Complex(0, 1) * dy)) < 1e-8);
    CHECK(std::norm(fz) - std::norm(fzb) > 0);
  }
}
