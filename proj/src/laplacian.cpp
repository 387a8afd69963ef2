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

#include "hopfmin/laplacian.hpp"

#include <algorithm>

#include <Eigen/SparseCore>

namespace hopfmin {

SparseMatrix stiffness(const TriangleMesh& mesh, std::span<const double> weights) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(9 * mesh.triangles.size());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Tri& tri = mesh.triangles[t];
    const double w = weights.empty() ? 1.0 : weights[t];
    const double A2 = orient(mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]);
    for (int i = 0; i < 3; ++i) {
      // Edge opposite vertex i, rotated: grad phi_i = J (p_{i+2} - p_{i+1}) / (2A).
      const Point ei = mesh.vertices[tri[(i + 2) % 3]] - mesh.vertices[tri[(i + 1) % 3]];
      for (int j = 0; j < 3; ++j) {
        const Point ej = mesh.vertices[tri[(j + 2) % 3]] - mesh.vertices[tri[(j + 1) % 3]];
        trip.emplace_back(tri[i], tri[j], w * dot(ei, ej) / (2.0 * A2));
      }
    }
  }
  SparseMatrix L(mesh.num_vertices(), mesh.num_vertices());
  L.setFromTriplets(trip.begin(), trip.end());
  return L;
}

SparseMatrix graph_laplacian(const TriangleMesh& mesh) {
  std::vector<std::pair<int, int>> edges;
  for (const Tri& t : mesh.triangles)
    for (int i = 0; i < 3; ++i) {
      const int a = t[i], b = t[(i + 1) % 3];
      edges.emplace_back(std::min(a, b), std::max(a, b));
    }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::vector<Eigen::Triplet<double>> trip;
  for (auto [a, b] : edges) {
    trip.emplace_back(a, b, -1.0);
    trip.emplace_back(b, a, -1.0);
    trip.emplace_back(a, a, 1.0);
    trip.emplace_back(b, b, 1.0);
  }
  SparseMatrix L(mesh.num_vertices(), mesh.num_vertices());
  L.setFromTriplets(trip.begin(), trip.end());
  return L;
}

DirichletSolver::DirichletSolver(const TriangleMesh& mesh, const SparseMatrix& L) {
  const int nv = mesh.num_vertices();
  index_.assign(nv, -1);
  boundary_slot_.assign(nv, -1);
  for (std::size_t k = 0; k < mesh.boundary_loop.size(); ++k) boundary_slot_[mesh.boundary_loop[k]] = static_cast<int>(k);
  for (int v = 0; v < nv; ++v)
    if (boundary_slot_[v] < 0) index_[v] = n_++;
  std::vector<Eigen::Triplet<double>> ii, ib;
  for (int k = 0; k < L.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(L, k); it; ++it) {
      const int r = static_cast<int>(it.row()), c = static_cast<int>(it.col());
      if (index_[r] < 0) continue;
      if (index_[c] >= 0)
        ii.emplace_back(index_[r], index_[c], it.value());
      else
        ib.emplace_back(index_[r], boundary_slot_[c], it.value());
    }
  SparseMatrix Lii(n_, n_);
  Lii.setFromTriplets(ii.begin(), ii.end());
  Lib_.resize(n_, static_cast<int>(mesh.boundary_loop.size()));
  Lib_.setFromTriplets(ib.begin(), ib.end());
  if (n_ > 0) {
    ldlt_.compute(Lii);
    if (ldlt_.info() != Eigen::Success) throw NumericalError("Dirichlet solve: singular system (degenerate mesh?)");
  }
}

std::vector<Complex> DirichletSolver::solve(std::span<const Complex> boundary, std::span<const Complex> rhs) const {
  const int nv = static_cast<int>(index_.size());
  std::vector<Complex> out(nv);
  Eigen::VectorXd bx(Lib_.cols()), by(Lib_.cols());
  for (int k = 0; k < Lib_.cols(); ++k) bx[k] = boundary[k].real(), by[k] = boundary[k].imag();
  Eigen::VectorXd rx = -(Lib_ * bx), ry = -(Lib_ * by);
  if (!rhs.empty())
    for (int v = 0; v < nv; ++v)
      if (index_[v] >= 0) rx[index_[v]] += rhs[v].real(), ry[index_[v]] += rhs[v].imag();
  Eigen::VectorXd x, y;
  if (n_ > 0) {
    x = ldlt_.solve(rx);
    y = ldlt_.solve(ry);
  }
  for (int v = 0; v < nv; ++v)
    out[v] = index_[v] >= 0 ? Complex(x[index_[v]], y[index_[v]]) : boundary[boundary_slot_[v]];
  return out;
}

std::vector<Complex> DirichletSolver::solve_interior(std::span<const Complex> rhs) const {
  const std::vector<Complex> zero(Lib_.cols(), Complex(0.0, 0.0));
  return solve(zero, rhs);
}

DiscreteMap harmonic_extension(MeshPtr mesh, std::span<const Point> boundary) {
  if (boundary.size() != mesh->boundary_loop.size()) throw ConfigError("harmonic_extension: one value per boundary vertex");
  const DirichletSolver solver(*mesh, stiffness(*mesh));
  DiscreteMap m{mesh, solver.solve(boundary)};
  return m;
}

DiscreteMap harmonic_extension(MeshPtr mesh, const BoundaryMap& bmap, const Domain& target) {
  const auto b = boundary_targets(*mesh, bmap, target);
  return harmonic_extension(std::move(mesh), b);
}

DiscreteMap tutte_embedding(MeshPtr mesh, std::span<const Point> boundary) {
  if (boundary.size() != mesh->boundary_loop.size()) throw ConfigError("tutte_embedding: one value per boundary vertex");
  const DirichletSolver solver(*mesh, graph_laplacian(*mesh));
  DiscreteMap m{mesh, solver.solve(boundary)};
  return m;
}

std::vector<double> torsion(const TriangleMesh& mesh) {
  const DirichletSolver solver(mesh, stiffness(mesh));
  // Lumped load: one third of each incident triangle's area.
  std::vector<Complex> load(mesh.num_vertices(), Complex(0.0, 0.0));
  for (int t = 0; t < mesh.num_triangles(); ++t)
    for (int v : mesh.triangles[t]) load[v] += mesh.triangle_area(t) / 3.0;
  const auto u = solver.solve_interior(load);
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i].real();
  return out;
}

}  // namespace hopfmin
