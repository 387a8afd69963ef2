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

#include "hopfmin/quaddiff.hpp"
#include "oracles.hpp"

using namespace hopfmin;

namespace {

QuadraticDifferential constant(Complex c, const Domain& d) { return QuadraticDifferential::polynomial({c}, d); }
QuadraticDifferential phi_z(const Domain& d) { return QuadraticDifferential::polynomial({0.0, 1.0}, d); }

}  // namespace

TEST_CASE("polynomial parsing") {
  using V = std::vector<Complex>;
  CHECK(QuadraticDifferential::parse_polynomial("z") == V{0.0, 1.0});
  CHECK(QuadraticDifferential::parse_polynomial("-1") == V{-1.0});
  CHECK(QuadraticDifferential::parse_polynomial("z^2 - 1") == V{-1.0, 0.0, 1.0});
  CHECK(QuadraticDifferential::parse_polynomial("(1+2i)z^3 - 0.5") == V{-0.5, 0.0, 0.0, Complex(1, 2)});
  CHECK(QuadraticDifferential::parse_polynomial("2iz + 1e-3") == V{1e-3, Complex(0, 2)});
  CHECK_THROWS_AS(QuadraticDifferential::parse_polynomial("z^"), ConfigError);
  CHECK_THROWS_AS(QuadraticDifferential::parse_polynomial("y"), ConfigError);
  CHECK_THROWS_AS(QuadraticDifferential::polynomial({0.0}, make_rectangle(1, 1)), ConfigError);
}

TEST_CASE("critical points") {
  const auto q = QuadraticDifferential::polynomial({-1.0, 0.0, 1.0}, make_disk_polygon(64, 2.0));
  REQUIRE(q.critical_points().size() == 2);
  CHECK(std::abs(q.critical_points()[0] - Point(-1, 0)) < 1e-12);
  CHECK(std::abs(q.critical_points()[1] - Point(1, 0)) < 1e-12);
  CHECK(phi_z(make_rectangle(1, 1, {1, 1})).critical_points().empty());
}

TEST_CASE("trace: constant differentials") {
  const Domain sq = make_rectangle(1, 1);
  SUBCASE("phi = 1 gives a vertical segment") {
    const auto t = trace(constant(1.0, sq), {0.5, 0.2}, TrajectoryKind::Vertical, 1e-2);
    double dev = 0;
    for (const auto& p : t.points) dev = std::max(dev, std::abs(p.real() - 0.5));
    CHECK(dev <= 1e-12);
    CHECK(t.termination[0] == Termination::Boundary);
    CHECK(t.termination[1] == Termination::Boundary);
    CHECK(std::abs(t.points.front().imag()) < 1e-12);
    CHECK(std::abs(t.points.back().imag() - 1.0) < 1e-12);
    CHECK(std::abs(t.phi_length - 1.0) < 1e-12);
    CHECK_FALSE(t.tangential_exit[0]);
  }
  SUBCASE("phi = -1 gives a horizontal segment") {
    const auto t = trace(constant(-1.0, sq), {0.5, 0.5}, TrajectoryKind::Vertical, 1e-2);
    for (const auto& p : t.points) CHECK(std::abs(p.imag() - 0.5) <= 1e-12);
    CHECK(std::abs(t.points.front().real()) < 1e-12);
    CHECK(std::abs(t.points.back().real() - 1.0) < 1e-12);
  }
  SUBCASE("horizontal kind of phi = 1") {
    const auto t = trace(constant(1.0, sq), {0.3, 0.7}, TrajectoryKind::Horizontal, 1e-2);
    for (const auto& p : t.points) CHECK(std::abs(p.imag() - 0.7) <= 1e-12);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(trace(constant(1.0, sq), {0.5, 0.5}, TrajectoryKind::Vertical, 0.0), ConfigError);
    CHECK_THROWS_AS(trace(constant(1.0, sq), {1.5, 0.5}, TrajectoryKind::Vertical, 0.1), ConfigError);
    CHECK_THROWS_AS(trace(phi_z(make_disk_polygon(32, 1.0)), {0.0, 0.0}, TrajectoryKind::Vertical, 0.1),
                    ConfigError);
  }
}

TEST_CASE("trace: phi = z against the natural-parameter curve") {
  const Domain disk = make_disk_polygon(256, 2.0);
  const auto q = phi_z(disk);
  const auto t = trace(q, {1.0, 0.0}, TrajectoryKind::Vertical, 1e-3);
  CHECK(t.termination[0] == Termination::Boundary);
  CHECK(t.termination[1] == Termination::Boundary);
  CHECK(oracle::hausdorff_to_nat_curve(t.points, disk) <= 1e-4);

  // Vertex error shrinks at fourth order.
  double prev = 0;
  for (double h : {0.08, 0.04, 0.02}) {
    const double e = oracle::vertex_deviation(trace(q, {1.0, 0.0}, TrajectoryKind::Vertical, h).points);
    if (prev > 0) CHECK(prev / e >= 8.0);
    prev = e;
  }

  // Tangent alignment and straightness in the natural parameter.
  for (std::size_t k = 0; k + 1 < t.points.size(); ++k) {
    const Point d = t.points[k + 1] - t.points[k];
    const Complex ph = q(0.5 * (t.points[k] + t.points[k + 1]));
    CHECK((ph * d * d).real() / (std::abs(ph) * std::norm(d)) <= -1.0 + 1e-6);
  }
  const auto zeta = natural_parameter(q, t.points);
  double lo = 0, hi = 0, dev = 0;
  for (const auto& z : zeta) lo = std::min(lo, z.imag()), hi = std::max(hi, z.imag()), dev = std::max(dev, std::abs(z.real()));
  CHECK(dev / (hi - lo) <= 1e-6);
  CHECK(std::abs(t.phi_length - (hi - lo)) <= 1e-6 * (hi - lo));
}

TEST_CASE("trace stops at a critical point") {
  const auto q = phi_z(make_disk_polygon(64, 1.0));
  // The negative real axis is a vertical trajectory that runs into 0.
  const auto t = trace(q, {-0.5, 0.0}, TrajectoryKind::Vertical, 1e-3);
  CHECK((t.termination[0] == Termination::CriticalPoint || t.termination[1] == Termination::CriticalPoint));
  double close = 1e300;
  for (const auto& p : t.points) close = std::min(close, std::abs(p));
  CHECK(close < 1e-3);
}

TEST_CASE("phi length") {
  const Domain big = make_rectangle(4, 4, {-2, -2});
  CHECK(phi_length(constant(4.0, big), {{0, 0}, {0.3, 0.4}, {1.3, 0.4}}) == doctest::Approx(3.0).epsilon(1e-15));
  std::vector<Point> seg;
  for (int k = 0; k <= 1000; ++k) seg.emplace_back(k / 1000.0, 0.0);
  CHECK(std::abs(phi_length(phi_z(big), seg) - 2.0 / 3.0) <= 1e-6);
  const auto t = trace(constant(1.0, make_rectangle(1, 1)), {0.5, 0.5}, TrajectoryKind::Vertical, 0.05);
  CHECK(std::abs(t.phi_length - 1.0) < 1e-12);
  CHECK(weighted_length(constant(1.0, big), {{0, 0}, {0, 1}}, [](Point z) { return z.imag(); }) ==
        doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("minimality") {
  SUBCASE("phi = 1") {
    const auto q = constant(1.0, make_rectangle(1, 1));
    const auto t = trace(q, {0.5, 0.5}, TrajectoryKind::Vertical, 0.05);
    const auto r = minimality_check(q, t, 200, 7);
    CHECK(r.competitors == 200);
    CHECK(r.margin >= 0.0);
    CHECK_FALSE(r.degenerate);
  }
  SUBCASE("phi = z") {
    const auto q = phi_z(make_disk_polygon(256, 2.0));
    const auto t = trace(q, {1.0, 0.0}, TrajectoryKind::Vertical, 1e-3);
    const auto r = minimality_check(q, t, 200, 11);
    CHECK(r.competitors == 200);
    CHECK(r.margin >= -1e-9);
  }
  SUBCASE("degenerate") {
    const auto q = constant(1.0, make_rectangle(1, 1));
    Trajectory t;
    t.points = {{0.5, 0.5}};
    const auto r = minimality_check(q, t, 200, 1);
    CHECK(r.degenerate);
    CHECK(r.margin >= 0.0);
  }
}

TEST_CASE("Fubini surrogate") {
  const Domain sq = make_rectangle(1, 1);
  const auto q = constant(1.0, sq);
  TrajectoryFamily fam{{0.0, 0.5}, {1.0, 0.5}, 0.1, 0.05, 0.1};
  SUBCASE("F = G = 1") {
    const auto r = fubini_check(q, [](Point) { return 1.0; }, [](Point) { return 1.0; }, fam);
    CHECK(r.lines.size() == 10);
    for (const auto& l : r.lines) CHECK(std::abs(l.line_F - 1.0) <= 1e-12);
    CHECK(std::abs(r.domain_lhs - 1.0) <= 1e-12);
    CHECK(std::abs(r.domain_rhs - 1.0) <= 1e-12);
    CHECK(std::abs(r.lines_lhs - 1.0) <= 1e-12);
    CHECK(r.all_lines_hold);
    CHECK(r.implication_holds);
  }
  SUBCASE("F = x, G = 1") {
    const auto r = fubini_check(q, [](Point z) { return z.real(); }, [](Point) { return 1.0; }, fam);
    for (const auto& l : r.lines) CHECK(std::abs(l.line_F - l.seed.real()) <= 1e-12);
    CHECK(std::abs(r.domain_lhs - 0.5) <= 1e-12);
    CHECK(std::abs(r.lines_lhs - 0.5) <= 1e-12);
    CHECK(r.all_lines_hold);
    CHECK(r.domain_lhs <= r.domain_rhs);
  }
  SUBCASE("phi = z on a disk away from the zero") {
    const auto qz = phi_z(make_disk_polygon(256, 0.5, {1.0, 0.0}));
    TrajectoryFamily f{{0.5, 0.0}, {1.5, 0.0}, 1e-2, 1e-3, 0.02};
    const auto F = [](Point z) { return 0.25 * std::norm(z); };
    const auto G = [](Point z) { return 1.0 + 0.1 * z.imag() * z.imag(); };
    const auto r = fubini_check(qz, F, G, f);
    CHECK(r.all_lines_hold);
    CHECK(r.domain_lhs <= r.domain_rhs + 1e-3);
    CHECK(r.coverage_error <= 1e-3);
    CHECK(r.implication_holds);
  }
  SUBCASE("uncovered gaps") {
    TrajectoryFamily f{{0.0, 0.5}, {1.0, 0.5}, 0.3, 0.05, 0.1};
    CHECK_NOTHROW(fubini_check(q, [](Point) { return 1.0; }, [](Point) { return 1.0; }, f));
    // A transversal that stops short leaves trajectories that do not cross.
    TrajectoryFamily g{{0.2, 0.2}, {0.8, 0.8}, 0.1, 0.05, 0.1};
    CHECK_NOTHROW(fubini_check(q, [](Point) { return 1.0; }, [](Point) { return 1.0; }, g));
  }
}
