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

#include <memory>
#include <optional>
#include <vector>

#include "hopfmin/geometry.hpp"

namespace hopfmin {

struct MeshTopology {
  /// neighbors[t][i] is the triangle across the edge opposite local vertex i, or -1.
  std::vector<std::array<int, 3>> neighbors;
  /// Incident triangles per vertex, ascending.
  std::vector<std::vector<int>> vertex_triangles;
  std::vector<bool> on_boundary;

  static MeshTopology build(const TriangleMesh& mesh);

  /// Triangles around an interior vertex in counterclockwise order, starting
  /// at its lowest-index incident triangle. Empty for boundary vertices.
  std::vector<int> ring(const TriangleMesh& mesh, int v) const;
};

struct Location {
  int triangle = -1;
  std::array<double, 3> bary{};  // barycentric coordinates w.r.t. triangles[triangle]
  double distance = 0.0;         // 0 when the point lies in the closed triangle
};

/// Deterministic point location by triangle walk. Points on shared edges or
/// vertices resolve to the lowest-index containing triangle; points outside
/// the mesh resolve to the nearest triangle when within `tol`.
class PointLocator {
 public:
  explicit PointLocator(std::shared_ptr<const TriangleMesh> mesh);

  std::optional<Location> locate(Point p, double tol = 1e-9) const;
  const TriangleMesh& mesh() const { return *mesh_; }
  const MeshTopology& topology() const { return topo_; }

 private:
  std::array<double, 3> barycentric(int t, Point p) const;
  int start_triangle(Point p) const;
  Location settle(int t, Point p) const;

  std::shared_ptr<const TriangleMesh> mesh_;
  MeshTopology topo_;
  Point lo_, hi_;
  int nx_ = 1, ny_ = 1;
  std::vector<int> grid_;
};

}  // namespace hopfmin
