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

#include <functional>
#include <memory>
#include <vector>

#include "hopfmin/geometry.hpp"
#include "hopfmin/kernels.hpp"

namespace hopfmin {

using MeshPtr = std::shared_ptr<const TriangleMesh>;

/// Piecewise-linear map: one target point per reference vertex.
struct DiscreteMap {
  MeshPtr reference;
  std::vector<Point> targets;

  /// The image triangulation: reference connectivity on the target points.
  TriangleMesh image_mesh() const;
  /// Evaluate at the vertices of `mesh` from a closure.
  static DiscreteMap sample(MeshPtr mesh, const std::function<Point(Point)>& fn);
  static DiscreteMap identity(MeshPtr mesh);
};

/// Affine map z -> a z + b conj(z) + c.
struct AffineMap {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};
  Complex c{0.0, 0.0};

  Point operator()(Point z) const { return a * z + b * std::conj(z) + c; }
  double jacobian() const { return std::norm(a) - std::norm(b); }
  AffineMap inverse() const;
  /// this o inner
  AffineMap after(const AffineMap& inner) const;
};

struct TriangleDerivs {
  Complex fz;
  Complex fzb;
  double J = 0.0;  // |fz|^2 - |fzb|^2
  double K = 1.0;  // (|fz|^2 + |fzb|^2) / |J|;  1 when J == 0
  double area = 0.0;
  bool orientation_ok = true;  // J > 0
};

using DerivField = std::vector<TriangleDerivs>;

/// Wirtinger derivatives, Jacobian and distortion of each affine piece.
DerivField derivatives(const DiscreteMap& map);
DerivField derivatives(const DiscreteMap& map, const ReferenceFrames& frames);

inline double min_jacobian(const DerivField& d) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& x : d) m = std::min(m, x.J);
  return m;
}

/// Inverse of an orientation-preserving PL map, defined on its image mesh.
/// Throws NumericalError listing the triangles with J <= 0.
DiscreteMap invert(const DiscreteMap& map);

/// outer o inner, sampled at the vertices of inner's reference mesh.
/// Throws NumericalError when an image point lies farther than `tol`
/// outside outer's reference mesh.
DiscreteMap compose(const DiscreteMap& outer, const DiscreteMap& inner, double tol = 1e-9);

/// Largest vertex displacement between two maps on the same reference.
double max_vertex_distance(const DiscreteMap& a, const DiscreteMap& b);

}  // namespace hopfmin
