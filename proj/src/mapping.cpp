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

#include "hopfmin/mapping.hpp"

#include <algorithm>
#include <sstream>

#include "hopfmin/locate.hpp"

namespace hopfmin {

ReferenceFrames ReferenceFrames::build(const TriangleMesh& mesh) {
  ReferenceFrames fr;
  const int nt = mesh.num_triangles();
  fr.tris = mesh.triangles;
  fr.alpha.resize(nt);
  fr.beta.resize(nt);
  fr.area.resize(nt);
  fr.edges.resize(nt);
  fr.det_im.resize(nt);
  for (int t = 0; t < nt; ++t) {
    const Tri& tri = mesh.triangles[t];
    const Point p0 = mesh.vertices[tri[0]];
    const Point e1 = mesh.vertices[tri[1]] - p0;
    const Point e2 = mesh.vertices[tri[2]] - p0;
    const Complex det = e1 * std::conj(e2) - std::conj(e1) * e2;
    if (det == 0.0) throw NumericalError("reference triangle " + std::to_string(t) + " is degenerate");
    const Complex a1 = std::conj(e2) / det, a2 = -std::conj(e1) / det;
    const Complex b1 = -e2 / det, b2 = e1 / det;
    fr.alpha[t] = {-(a1 + a2), a1, a2};
    fr.beta[t] = {-(b1 + b2), b1, b2};
    fr.area[t] = 0.5 * cross(e1, e2);
    fr.edges[t] = {e1, e2};
    fr.det_im[t] = det.imag();
  }
  const int nv = mesh.num_vertices();
  fr.gather_offsets.assign(nv + 1, 0);
  for (const Tri& tri : mesh.triangles)
    for (int v : tri) ++fr.gather_offsets[v + 1];
  for (int v = 0; v < nv; ++v) fr.gather_offsets[v + 1] += fr.gather_offsets[v];
  fr.gather_slots.resize(fr.gather_offsets[nv]);
  std::vector<int> fill(fr.gather_offsets.begin(), fr.gather_offsets.end() - 1);
  for (int t = 0; t < nt; ++t)
    for (int i = 0; i < 3; ++i) fr.gather_slots[fill[mesh.triangles[t][i]]++] = 3 * t + i;
  return fr;
}

TriangleMesh DiscreteMap::image_mesh() const {
  TriangleMesh m;
  m.vertices = targets;
  m.triangles = reference->triangles;
  m.boundary_loop = reference->boundary_loop;
  return m;
}

DiscreteMap DiscreteMap::sample(MeshPtr mesh, const std::function<Point(Point)>& fn) {
  DiscreteMap m{std::move(mesh), {}};
  m.targets.reserve(m.reference->vertices.size());
  for (const auto& p : m.reference->vertices) m.targets.push_back(fn(p));
  return m;
}

DiscreteMap DiscreteMap::identity(MeshPtr mesh) {
  DiscreteMap m{std::move(mesh), {}};
  m.targets = m.reference->vertices;
  return m;
}

AffineMap AffineMap::inverse() const {
  const double J = jacobian();
  if (J == 0.0) throw NumericalError("affine map is singular");
  // w = a z + b zbar + c  =>  z = (conj(a)(w - c) - b conj(w - c)) / J
  AffineMap inv;
  inv.a = std::conj(a) / J;
  inv.b = -b / J;
  inv.c = -(inv.a * c + inv.b * std::conj(c));
  return inv;
}

AffineMap AffineMap::after(const AffineMap& inner) const {
  AffineMap r;
  r.a = a * inner.a + b * std::conj(inner.b);
  r.b = a * inner.b + b * std::conj(inner.a);
  r.c = a * inner.c + b * std::conj(inner.c) + c;
  return r;
}

DerivField derivatives(const DiscreteMap& map, const ReferenceFrames& frames) {
  const int nt = frames.num_triangles();
  std::vector<kernels::Jet> jets(nt);
  kernels::omp::wirtinger(frames, map.targets, jets);
  DerivField out(nt);
  for (int t = 0; t < nt; ++t) {
    auto& d = out[t];
    d.fz = jets[t].fz;
    d.fzb = jets[t].fzb;
    const double a = std::norm(d.fz), b = std::norm(d.fzb);
    d.J = a - b;
    d.K = d.J == 0.0 ? 1.0 : (a + b) / std::abs(d.J);
    d.area = frames.area[t];
    d.orientation_ok = d.J > 0;
  }
  return out;
}

DerivField derivatives(const DiscreteMap& map) {
  return derivatives(map, ReferenceFrames::build(*map.reference));
}

DiscreteMap invert(const DiscreteMap& map) {
  const auto& V = map.targets;
  std::vector<int> bad;
  for (int t = 0; t < map.reference->num_triangles(); ++t) {
    const Tri& tri = map.reference->triangles[t];
    if (!(orient(V[tri[0]], V[tri[1]], V[tri[2]]) > 0)) bad.push_back(t);
  }
  if (!bad.empty()) {
    std::ostringstream os;
    os << "not invertible as orientation-preserving map; triangles with J <= 0:";
    for (std::size_t i = 0; i < bad.size() && i < 20; ++i) os << ' ' << bad[i];
    if (bad.size() > 20) os << " ... (" << bad.size() << " total)";
    throw NumericalError(os.str());
  }
  DiscreteMap inv;
  inv.reference = std::make_shared<const TriangleMesh>(map.image_mesh());
  inv.targets = map.reference->vertices;
  return inv;
}

DiscreteMap compose(const DiscreteMap& outer, const DiscreteMap& inner, double tol) {
  PointLocator loc(outer.reference);
  DiscreteMap out{inner.reference, std::vector<Point>(inner.targets.size())};
  for (std::size_t v = 0; v < inner.targets.size(); ++v) {
    const Point p = inner.targets[v];
    const auto l = loc.locate(p, tol);
    if (!l) {
      std::ostringstream os;
      os.precision(17);
      os << "compose: point (" << p.real() << ", " << p.imag() << ") lies outside the outer map's domain";
      throw NumericalError(os.str());
    }
    const Tri& tri = outer.reference->triangles[l->triangle];
    out.targets[v] = l->bary[0] * outer.targets[tri[0]] + l->bary[1] * outer.targets[tri[1]] +
                     l->bary[2] * outer.targets[tri[2]];
  }
  return out;
}

double max_vertex_distance(const DiscreteMap& a, const DiscreteMap& b) {
  if (a.targets.size() != b.targets.size()) throw ConfigError("max_vertex_distance: size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.targets.size(); ++i) m = std::max(m, std::abs(a.targets[i] - b.targets[i]));
  return m;
}

}  // namespace hopfmin
