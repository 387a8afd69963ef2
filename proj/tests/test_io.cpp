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
#include <limits>
#include <string>

#include "hopfmin/io.hpp"
#include "hopfmin/laplacian.hpp"
#include "hopfmin/svg.hpp"

using namespace hopfmin;
using io::json;

namespace {

int count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

json disk_problem_json() {
  return json::parse(R"({
    "source": {"kind": "disk", "n": 32},
    "target": {"kind": "disk", "n": 32},
    "boundary": {"kind": "reparam", "n": 128, "modes": [[1, 0.05]]},
    "functional": {"kind": "mean_distortion", "p": 2},
    "mesh_edge": 0.25,
    "options": {"max_iterations": 50, "tol_grad": 1e-6},
    "seed": 7
  })");
}

}  // namespace

TEST_CASE("domains") {
  const auto d = io::domain_from_json(json::parse(R"({"kind": "rectangle", "width": 2, "height": 1})"));
  CHECK(d.area() == doctest::Approx(2.0));
  CHECK(io::domain_from_json(json::parse(R"({"kind": "lshape"})")).area() == doctest::Approx(3.0));
  const auto p = io::domain_from_json(json::parse(R"({"kind": "polygon", "vertices": [[0,0],[1,0],[0,1]]})"));
  CHECK(p.vertices.size() == 3);
  CHECK(io::domain_from_json(io::to_json(p)).vertices == p.vertices);
  CHECK_THROWS_AS(io::domain_from_json(json::parse(R"({"kind": "blob"})")), ConfigError);
  CHECK_THROWS_AS(io::domain_from_json(json::parse(R"({"kind": "disk", "radius": -1})")), ConfigError);
  CHECK_THROWS_AS(io::domain_from_json(json::parse(R"({"kind": "disk", "radius": "big"})")), ConfigError);
  CHECK_THROWS_AS(io::point_from(json::parse("[1]")), ConfigError);
}

TEST_CASE("mesh and map round trip exactly") {
  const auto m = std::make_shared<TriangleMesh>(triangulate(make_disk_polygon(24, 1.0), 0.3));
  const auto f = DiscreteMap::sample(m, [](Point z) { return z + 0.1 * z * z / 3.0; });
  const auto text = io::dump(io::to_json(f));
  const auto g = io::map_from_json(json::parse(text));
  CHECK(g.targets == f.targets);
  CHECK(g.reference->vertices == m->vertices);
  CHECK(g.reference->triangles == m->triangles);
  CHECK(g.reference->boundary_loop == m->boundary_loop);
  CHECK(io::dump(io::to_json(g)) == text);
  json bad = io::to_json(f);
  bad["targets"].erase(0);
  CHECK_THROWS_AS(io::map_from_json(bad), ConfigError);
}

TEST_CASE("boundary maps") {
  const Domain d = make_disk_polygon(32, 1.0);
  const auto b = io::boundary_from_json(json::parse(R"({"kind": "reparam", "n": 64, "shift": 0.25})"), d, d);
  REQUIRE(b.samples.size() == 64);
  CHECK(std::abs(b.samples[0].w - d.point_at(0.25)) < 1e-14);
  const auto back = io::boundary_from_json(io::to_json(b), d, d);
  CHECK(back.samples.size() == b.samples.size());
  CHECK(back.samples[5].w == b.samples[5].w);
  const auto legacy = io::boundary_from_json(json::parse(R"({"kind": "samples", "samples": [[0, 1, 0], [0.5, -1, 0]]})"), d, d);
  CHECK(legacy.samples[1].w == Point(-1, 0));
  // The affine image must land on the target boundary.
  const Domain e = make_polygon([&] {
    std::vector<Point> v;
    for (auto p : d.vertices) v.push_back(2.0 * p);
    return v;
  }());
  CHECK_NOTHROW(io::boundary_from_json(json::parse(R"({"kind": "affine", "a": [2, 0]})"), d, e));
  CHECK_THROWS_AS(io::boundary_from_json(json::parse(R"({"kind": "affine", "a": [3, 0]})"), d, e), ConfigError);
  CHECK_THROWS_AS(io::boundary_from_json(json::parse(R"({"kind": "affine", "a": [1, 0], "b": [2, 0]})"), d, e),
                  ConfigError);
  CHECK_THROWS_AS(io::boundary_from_json(json::parse(R"({"kind": "spiral"})"), d, d), ConfigError);
}

TEST_CASE("problem files") {
  const auto pr = io::problem_from_json(disk_problem_json());
  CHECK(pr.functional == Functional::MeanDistortion);
  CHECK(pr.p == 2.0);
  CHECK(pr.mesh_edge == 0.25);
  CHECK(pr.options.max_iterations == 50);
  CHECK(pr.options.tol_grad == 1e-6);
  CHECK(pr.seed == 7);
  auto j = disk_problem_json();
  j["functional"]["p"] = 1.0;
  CHECK_THROWS_AS(io::problem_from_json(j), ConfigError);
  j = disk_problem_json();
  j["functional"] = json::parse(R"({"kind": "weighted_dirichlet", "phi": "quad:1,0.5"})");
  CHECK(io::problem_from_json(j).phi->label() == WeightFn::parse("quad:1,0.5").label());
  j.erase("source");
  CHECK_THROWS_AS(io::problem_from_json(j), ConfigError);
  j = disk_problem_json();
  j["functional"]["kind"] = "elastic";
  CHECK_THROWS_AS(io::problem_from_json(j), ConfigError);
}

TEST_CASE("reports") {
  const auto m = std::make_shared<TriangleMesh>(triangulate(make_rectangle(1, 1), 0.5));
  DiscreteMap f = DiscreteMap::identity(m);
  std::swap(f.targets[m->triangles[0][0]], f.targets[m->triangles[0][1]]);
  const auto e = mean_distortion(f, 2.0, Mode::Optimization);
  const json j = io::to_json(e, true);
  CHECK(j["total"] == "inf");
  CHECK(j["per_triangle"].size() == static_cast<std::size_t>(m->num_triangles()));
  const auto solved = solve(io::problem_from_json(disk_problem_json()));
  const json r = io::to_json(solved);
  for (const char* key : {"energy", "grad_norm", "tol_grad", "hopf_residual", "min_J", "iterations", "converged",
                          "energy_trace"})
    CHECK(r.contains(key));
  CHECK(io::dump(r) == io::dump(io::to_json(solve(io::problem_from_json(disk_problem_json())))));
  // 17 significant digits.
  const double x = 0.1 + 0.2;
  const std::string text = io::dump(json{{"x", x}, {"y", 2.0}});
  CHECK(text.find("0.30000000000000004") != std::string::npos);
  CHECK(text.find("2.0") != std::string::npos);
  CHECK(json::parse(text)["x"].get<double>() == x);
}

TEST_CASE("svg") {
  const auto m = triangulate(make_rectangle(1, 1), 0.25);
  const auto s = svg::mesh(m);
  CHECK(count(s, "<polygon class=\"tri\"") == m.num_triangles());
  CHECK(s.find("data-triangles=\"" + std::to_string(m.num_triangles()) + "\"") != std::string::npos);
  CHECK(svg::mesh(TriangleMesh{}).find("empty mesh") != std::string::npos);
  CHECK(svg::trajectories(make_rectangle(1, 1), {}).find("empty") != std::string::npos);

  // Exterior vertices of a map that leaves the target get their own marker class.
  const auto mp = std::make_shared<TriangleMesh>(m);
  const auto big = DiscreteMap::sample(mp, [](Point z) { return 1.5 * z; });
  const auto doc = svg::map(big, make_rectangle(1, 1));
  int outside = 0;
  for (const auto& p : big.targets)
    if (winding_number(make_rectangle(1, 1).vertices, p) == 0 && make_rectangle(1, 1).boundary_distance(p) > 1e-12)
      ++outside;
  CHECK(outside > 0);
  CHECK(count(doc, "class=\"exterior\"") == outside);
  CHECK(count(svg::map(big, std::nullopt), "class=\"exterior\"") == 0);

  DiscreteMap flip = DiscreteMap::identity(mp);
  for (auto& p : flip.targets) p = std::conj(p);
  CHECK(count(svg::map(flip, std::nullopt), "class=\"flipped\"") == m.num_triangles());

  const auto q = QuadraticDifferential::polynomial({1.0}, make_rectangle(1, 1));
  std::vector<Trajectory> fam;
  for (double x : {0.25, 0.5, 0.75}) fam.push_back(trace(q, {x, 0.5}, TrajectoryKind::Vertical, 0.1));
  CHECK(count(svg::trajectories(q.domain(), fam), "class=\"vertical\"") == 3);
  CHECK(svg::mesh(m) == svg::mesh(m));
}
