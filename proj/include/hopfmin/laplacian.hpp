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

#include <span>
#include <vector>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "hopfmin/mapping.hpp"

namespace hopfmin {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Stiffness matrix sum_T w_T int_T grad(phi_i) . grad(phi_j), i.e. the
/// cotangent Laplacian when every weight is one.
SparseMatrix stiffness(const TriangleMesh& mesh, std::span<const double> weights = {});

/// Uniform-weight graph Laplacian (Tutte).
SparseMatrix graph_laplacian(const TriangleMesh& mesh);

/// Solves L u = rhs on interior vertices with u fixed on the boundary.
/// The factorization is reused across solves.
class DirichletSolver {
 public:
  DirichletSolver(const TriangleMesh& mesh, const SparseMatrix& L);
  /// Interior values from boundary values (indexed like mesh.boundary_loop)
  /// and an interior right-hand side (full-length, boundary entries ignored).
  std::vector<Complex> solve(std::span<const Complex> boundary, std::span<const Complex> rhs = {}) const;
  /// Interior-only solve with zero boundary data: returns a full-length vector.
  std::vector<Complex> solve_interior(std::span<const Complex> rhs) const;

 private:
  int n_ = 0;
  std::vector<int> index_;  // vertex -> interior unknown, -1 on the boundary
  std::vector<int> boundary_slot_;
  SparseMatrix Lib_;
  Eigen::SimplicialLDLT<SparseMatrix> ldlt_;
};

/// Discrete harmonic (cotangent-weight) extension of boundary values given
/// per entry of mesh.boundary_loop. No injectivity guarantee.
DiscreteMap harmonic_extension(MeshPtr mesh, std::span<const Point> boundary);
DiscreteMap harmonic_extension(MeshPtr mesh, const BoundaryMap& bmap, const Domain& target);

/// Tutte embedding: uniform-weight barycentric extension.
DiscreteMap tutte_embedding(MeshPtr mesh, std::span<const Point> boundary);

/// Discrete torsion function: -Laplace u = 1, u = 0 on the boundary.
std::vector<double> torsion(const TriangleMesh& mesh);

}  // namespace hopfmin
