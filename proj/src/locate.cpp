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

#include "hopfmin/locate.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hopfmin {

MeshTopology MeshTopology::build(const TriangleMesh& mesh) {
  MeshTopology topo;
  const int nt = mesh.num_triangles();
  topo.neighbors.assign(nt, {-1, -1, -1});
  topo.vertex_triangles.assign(mesh.num_vertices(), {});
  std::map<std::pair<int, int>, std::pair<int, int>> half;  // directed edge -> (triangle, local)
  for (int t = 0; t < nt; ++t) {
    const Tri& tri = mesh.triangles[t];
    for (int i = 0; i < 3; ++i) {
      topo.vertex_triangles[tri[i]].push_back(t);
      half[{tri[(i + 1) % 3], tri[(i + 2) % 3]}] = {t, i};
    }
  }
  for (const auto& [e, ti] : half) {
    auto it = half.find({e.second, e.first});
    if (it != half.end()) topo.neighbors[ti.first][ti.second] = it->second.first;
  }
  topo.on_boundary = mesh.boundary_mask();
  return topo;
}

std::vector<int> MeshTopology::ring(const TriangleMesh& mesh, int v) const {
  if (on_boundary[v]) return {};
  const auto& inc = vertex_triangles[v];
  if (inc.empty()) return {};
  std::vector<int> out;
  int t = inc.front();
  do {
    out.push_back(t);
    const Tri& tri = mesh.triangles[t];
    const int i = static_cast<int>(std::find(tri.begin(), tri.end(), v) - tri.begin());
    // Rotating counterclockwise about v crosses the edge (v, next-next), opposite tri[i+1].
    t = neighbors[t][(i + 1) % 3];
    if (t < 0 || out.size() > inc.size()) return {};
  } while (t != inc.front());
  return out;
}

PointLocator::PointLocator(std::shared_ptr<const TriangleMesh> mesh)
    : mesh_(std::move(mesh)), topo_(MeshTopology::build(*mesh_)) {
  const auto& V = mesh_->vertices;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& p : V) {
    xmin = std::min(xmin, p.real()), xmax = std::max(xmax, p.real());
    ymin = std::min(ymin, p.imag()), ymax = std::max(ymax, p.imag());
  }
  lo_ = {xmin, ymin};
  hi_ = {xmax, ymax};
  const int side = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(mesh_->num_triangles()) / 2.0)));
  nx_ = ny_ = side;
  grid_.assign(static_cast<std::size_t>(nx_) * ny_, -1);
  std::vector<double> best(grid_.size(), 1e300);
  for (int t = 0; t < mesh_->num_triangles(); ++t) {
    const Tri& tri = mesh_->triangles[t];
    const Point c = (V[tri[0]] + V[tri[1]] + V[tri[2]]) / 3.0;
    const double fx = (c.real() - xmin) / std::max(xmax - xmin, 1e-300) * nx_;
    const double fy = (c.imag() - ymin) / std::max(ymax - ymin, 1e-300) * ny_;
    const int ix = std::clamp(static_cast<int>(fx), 0, nx_ - 1);
    const int iy = std::clamp(static_cast<int>(fy), 0, ny_ - 1);
    const double d = std::hypot(fx - ix - 0.5, fy - iy - 0.5);
    auto& slot = grid_[static_cast<std::size_t>(iy) * nx_ + ix];
    if (d < best[static_cast<std::size_t>(iy) * nx_ + ix]) {
      best[static_cast<std::size_t>(iy) * nx_ + ix] = d;
      slot = t;
    }
  }
  // Fill empty cells from filled neighbours, sweeping until stable.
  for (bool changed = true; changed;) {
    changed = false;
    for (int iy = 0; iy < ny_; ++iy)
      for (int ix = 0; ix < nx_; ++ix) {
        auto& slot = grid_[static_cast<std::size_t>(iy) * nx_ + ix];
        if (slot >= 0) continue;
        const int cand[4][2] = {{ix - 1, iy}, {ix + 1, iy}, {ix, iy - 1}, {ix, iy + 1}};
        for (const auto& c : cand) {
          if (c[0] < 0 || c[0] >= nx_ || c[1] < 0 || c[1] >= ny_) continue;
          const int s = grid_[static_cast<std::size_t>(c[1]) * nx_ + c[0]];
          if (s >= 0) {
            slot = s;
            changed = true;
            break;
          }
        }
      }
  }
}

std::array<double, 3> PointLocator::barycentric(int t, Point p) const {
  const auto& V = mesh_->vertices;
  const Tri& tri = mesh_->triangles[t];
  const double twice = orient(V[tri[0]], V[tri[1]], V[tri[2]]);
  return {orient(p, V[tri[1]], V[tri[2]]) / twice, orient(V[tri[0]], p, V[tri[2]]) / twice,
          orient(V[tri[0]], V[tri[1]], p) / twice};
}

int PointLocator::start_triangle(Point p) const {
  const double fx = (p.real() - lo_.real()) / std::max(hi_.real() - lo_.real(), 1e-300) * nx_;
  const double fy = (p.imag() - lo_.imag()) / std::max(hi_.imag() - lo_.imag(), 1e-300) * ny_;
  const int ix = std::clamp(static_cast<int>(std::floor(fx)), 0, nx_ - 1);
  const int iy = std::clamp(static_cast<int>(std::floor(fy)), 0, ny_ - 1);
  return std::max(0, grid_[static_cast<std::size_t>(iy) * nx_ + ix]);
}

namespace {
constexpr double kInsideEps = 1e-12;
}

// Move to the lowest-index triangle that still contains p.
Location PointLocator::settle(int t, Point p) const {
  for (bool moved = true; moved;) {
    moved = false;
    const auto b = barycentric(t, p);
    for (int i = 0; i < 3; ++i) {
      if (std::abs(b[i]) > kInsideEps) continue;
      const int n = topo_.neighbors[t][i];
      if (n >= 0 && n < t) {
        const auto bn = barycentric(n, p);
        if (*std::min_element(bn.begin(), bn.end()) >= -kInsideEps) {
          t = n;
          moved = true;
          break;
        }
      }
    }
    if (!moved) {
      // Vertex hits: any incident triangle with lower index that contains p.
      const Tri& tri = mesh_->triangles[t];
      for (int i = 0; i < 3 && !moved; ++i) {
        if (std::abs(b[i] - 1.0) > kInsideEps) continue;
        for (int u : topo_.vertex_triangles[tri[i]]) {
          if (u >= t) break;
          const auto bu = barycentric(u, p);
          if (*std::min_element(bu.begin(), bu.end()) >= -kInsideEps) {
            t = u;
            moved = true;
            break;
          }
        }
      }
    }
  }
  return {t, barycentric(t, p), 0.0};
}

std::optional<Location> PointLocator::locate(Point p, double tol) const {
  const int nt = mesh_->num_triangles();
  int t = start_triangle(p);
  const int limit = 4 * static_cast<int>(std::sqrt(static_cast<double>(nt))) + 64;
  for (int step = 0; step < limit; ++step) {
    const auto b = barycentric(t, p);
    int worst = 0;
    for (int i = 1; i < 3; ++i)
      if (b[i] < b[worst]) worst = i;
    if (b[worst] >= -kInsideEps) return settle(t, p);
    const int n = topo_.neighbors[t][worst];
    if (n < 0) break;
    t = n;
  }
  // Exhaustive fallback: containment first, then nearest triangle.
  for (int u = 0; u < nt; ++u) {
    const auto b = barycentric(u, p);
    if (*std::min_element(b.begin(), b.end()) >= -kInsideEps) return settle(u, p);
  }
  const auto& V = mesh_->vertices;
  double best = 1e300;
  int best_t = -1;
  Point best_q;
  for (int u = 0; u < nt; ++u) {
    const Tri& tri = mesh_->triangles[u];
    for (int i = 0; i < 3; ++i) {
      const Point a = V[tri[i]], c = V[tri[(i + 1) % 3]];
      const Point ac = c - a;
      const double s = std::clamp(dot(p - a, ac) / std::norm(ac), 0.0, 1.0);
      const Point q = a + s * ac;
      const double d = std::abs(p - q);
      if (d < best) best = d, best_t = u, best_q = q;
    }
  }
  if (best_t < 0 || best > tol) return std::nullopt;
  auto b = barycentric(best_t, best_q);
  for (auto& x : b) x = std::max(x, 0.0);
  const double s = b[0] + b[1] + b[2];
  for (auto& x : b) x /= s;
  return Location{best_t, b, best};
}

}  // namespace hopfmin
