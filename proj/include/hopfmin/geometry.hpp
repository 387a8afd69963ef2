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

#pragma once

#include <vector>

#include "hopfmin/types.hpp"

namespace hopfmin {

enum class DomainKind { DiskPolygon, Rectangle, Polygon };

/// A simple, counterclockwise polygon. Curved domains are inscribed polygons.
struct Domain {
  DomainKind kind = DomainKind::Polygon;
  std::vector<Point> vertices;
  bool convex = false;

  double area() const;
  double perimeter() const;
  double diameter() const;
  /// Strict interior test (points on the boundary count as outside).
  bool contains(Point p) const;
  /// Euclidean distance from p to the boundary polygon.
  double boundary_distance(Point p) const;
  /// Point at arclength fraction t (taken mod 1) measured from vertices[0].
  Point point_at(double t) const;
  /// Arclength fraction in [0,1) of the boundary point closest to p.
  double fraction_of(Point p) const;
};

Domain make_rectangle(double width, double height, Point origin = {0.0, 0.0});
/// Regular n-gon inscribed in the circle |z - center| = radius, first vertex at angle 0.
Domain make_disk_polygon(int n, double radius, Point center = {0.0, 0.0});
/// General simple polygon. Clockwise input is reversed; self-intersection is
/// rejected with the offending edge pair.
Domain make_polygon(std::vector<Point> vertices);

double signed_area(const std::vector<Point>& polygon);
bool is_convex(const std::vector<Point>& polygon);
/// Winding number of a closed polyline around p.
int winding_number(const std::vector<Point>& loop, Point p);

struct TriangleMesh {
  std::vector<Point> vertices;
  std::vector<Tri> triangles;
  /// Boundary vertices in counterclockwise order, each listed once.
  std::vector<int> boundary_loop;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }
  double triangle_area(int t) const;
  double total_area() const;
  double max_edge() const;
  std::vector<bool> boundary_mask() const;
  /// The boundary loop as a polygon.
  std::vector<Point> boundary_polygon() const;
};

/// Conforming constrained Delaunay mesh of the polygon: boundary edges are
/// split to at most target_edge, the interior is seeded from a triangular
/// lattice and refined until no edge exceeds 1.5 * target_edge. Boundary
/// vertices come first in the vertex array, in loop order. Deterministic.
TriangleMesh triangulate(const Domain& domain, double target_edge);

/// Throws NumericalError when a structural mesh invariant fails.
void validate_mesh(const TriangleMesh& mesh);

struct BoundarySample {
  double s = 0.0;  // arclength fraction on the source boundary
  Point w;         // image point on the target boundary
};

/// Monotone sample table of a boundary homeomorphism (orientation +1).
struct BoundaryMap {
  std::vector<BoundarySample> samples;
};

/// Sample table of s -> target.point_at(g(s)) for a monotone g with g(1) = g(0) + 1.
template <class Fn>
BoundaryMap sample_boundary_map(const Domain& target, int n, Fn&& g) {
  BoundaryMap m;
  m.samples.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double s = static_cast<double>(k) / n;
    m.samples.push_back({s, target.point_at(g(s))});
  }
  return m;
}

/// Arclength fraction of each boundary-loop vertex, starting at boundary_loop[0].
std::vector<double> boundary_fractions(const TriangleMesh& mesh);

/// Target position for each entry of mesh.boundary_loop (same order):
/// arclength-linear interpolation between samples.
std::vector<Point> boundary_targets(const TriangleMesh& mesh, const BoundaryMap& bmap,
                                    const Domain& target);

/// Table of the inverse boundary homeomorphism: each sample's image point
/// becomes a source point on `source`.
BoundaryMap invert_boundary_map(const BoundaryMap& bmap, const Domain& source, const Domain& target);

}  // namespace hopfmin
