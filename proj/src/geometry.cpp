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

#include "hopfmin/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace hopfmin {

namespace {

bool segments_intersect(Point a, Point b, Point c, Point d) {
  const double d1 = orient(c, d, a), d2 = orient(c, d, b);
  const double d3 = orient(a, b, c), d4 = orient(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  auto on_segment = [](Point p, Point q, Point r) {
    return std::min(p.real(), q.real()) <= r.real() && r.real() <= std::max(p.real(), q.real()) &&
           std::min(p.imag(), q.imag()) <= r.imag() && r.imag() <= std::max(p.imag(), q.imag());
  };
  return (d1 == 0 && on_segment(c, d, a)) || (d2 == 0 && on_segment(c, d, b)) ||
         (d3 == 0 && on_segment(a, b, c)) || (d4 == 0 && on_segment(a, b, d));
}

double point_segment_distance(Point p, Point a, Point b, double* param = nullptr) {
  const Point ab = b - a;
  const double len2 = std::norm(ab);
  double t = len2 > 0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  if (param) *param = t;
  return std::abs(p - (a + t * ab));
}

}  // namespace

double signed_area(const std::vector<Point>& polygon) {
  double s = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) s += cross(polygon[i], polygon[(i + 1) % n]);
  return 0.5 * s;
}

bool is_convex(const std::vector<Point>& polygon) {
  const std::size_t n = polygon.size();
  double scale = 0.0;
  for (const auto& p : polygon) scale = std::max(scale, std::abs(p));
  const double tol = 1e-14 * std::max(1.0, scale * scale);
  for (std::size_t i = 0; i < n; ++i) {
    if (orient(polygon[i], polygon[(i + 1) % n], polygon[(i + 2) % n]) < -tol) return false;
  }
  return true;
}

int winding_number(const std::vector<Point>& loop, Point p) {
  int wn = 0;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = loop[i], b = loop[(i + 1) % n];
    if (a.imag() <= p.imag()) {
      if (b.imag() > p.imag() && orient(a, b, p) > 0) ++wn;
    } else if (b.imag() <= p.imag() && orient(a, b, p) < 0) {
      --wn;
    }
  }
  return wn;
}

double Domain::area() const { return signed_area(vertices); }

double Domain::perimeter() const {
  double s = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    s += std::abs(vertices[(i + 1) % vertices.size()] - vertices[i]);
  return s;
}

double Domain::diameter() const {
  double d = 0.0;
  for (const auto& a : vertices)
    for (const auto& b : vertices) d = std::max(d, std::abs(a - b));
  return d;
}

bool Domain::contains(Point p) const {
  if (winding_number(vertices, p) == 0) return false;
  return boundary_distance(p) > 0.0;
}

double Domain::boundary_distance(Point p) const {
  double d = std::numeric_limits<double>::infinity();
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i)
    d = std::min(d, point_segment_distance(p, vertices[i], vertices[(i + 1) % n]));
  return d;
}

Point Domain::point_at(double t) const {
  t -= std::floor(t);
  const double total = perimeter();
  double target = t * total;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = vertices[i], b = vertices[(i + 1) % n];
    const double len = std::abs(b - a);
    if (target <= len || i + 1 == n) {
      const double u = len > 0 ? std::clamp(target / len, 0.0, 1.0) : 0.0;
      return a + u * (b - a);
    }
    target -= len;
  }
  return vertices.front();
}

double Domain::fraction_of(Point p) const {
  const std::size_t n = vertices.size();
  double best = std::numeric_limits<double>::infinity();
  double best_arc = 0.0, arc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = vertices[i], b = vertices[(i + 1) % n];
    double u = 0.0;
    const double d = point_segment_distance(p, a, b, &u);
    const double len = std::abs(b - a);
    if (d < best) {
      best = d;
      best_arc = arc + u * len;
    }
    arc += len;
  }
  double t = best_arc / arc;
  if (t >= 1.0) t -= 1.0;
  return t;
}

Domain make_rectangle(double width, double height, Point origin) {
  if (!(width > 0) || !(height > 0)) throw ConfigError("rectangle: width and height must be positive");
  Domain d;
  d.kind = DomainKind::Rectangle;
  d.vertices = {origin, origin + Point(width, 0), origin + Point(width, height), origin + Point(0, height)};
  d.convex = true;
  return d;
}

Domain make_disk_polygon(int n, double radius, Point center) {
  if (n < 3) throw ConfigError("disk polygon: need at least 3 sides");
  if (!(radius > 0)) throw ConfigError("disk polygon: radius must be positive");
  Domain d;
  d.kind = DomainKind::DiskPolygon;
  d.vertices.reserve(n);
  for (int k = 0; k < n; ++k) d.vertices.push_back(center + std::polar(radius, 2.0 * std::numbers::pi * k / n));
  d.convex = true;
  return d;
}

Domain make_polygon(std::vector<Point> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) throw ConfigError("polygon: need at least 3 vertices");
  for (std::size_t i = 0; i < n; ++i) {
    if (vertices[i] == vertices[(i + 1) % n])
      throw ConfigError("polygon: repeated vertex " + std::to_string(i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      const Point a = vertices[i], b = vertices[(i + 1) % n];
      const Point c = vertices[j], d = vertices[(j + 1) % n];
      bool hit;
      if (adjacent) {
        // Adjacent edges share one endpoint; they may only touch there.
        const Point shared = (j == i + 1) ? b : a;
        const Point p = (j == i + 1) ? a : b;
        const Point q = (j == i + 1) ? d : c;
        hit = orient(p, shared, q) == 0 && dot(p - shared, q - shared) > 0;
      } else {
        hit = segments_intersect(a, b, c, d);
      }
      if (hit) {
        std::ostringstream os;
        os << "polygon: self-intersection between edges " << i << " and " << j;
        throw ConfigError(os.str());
      }
    }
  }
  const double area = signed_area(vertices);
  if (area == 0.0) throw ConfigError("polygon: zero area");
  if (area < 0) std::reverse(vertices.begin(), vertices.end());
  Domain d;
  d.kind = DomainKind::Polygon;
  d.vertices = std::move(vertices);
  d.convex = is_convex(d.vertices);
  return d;
}

double TriangleMesh::triangle_area(int t) const {
  const Tri& tri = triangles[t];
  return 0.5 * orient(vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]);
}

double TriangleMesh::total_area() const {
  double s = 0.0;
  for (int t = 0; t < num_triangles(); ++t) s += triangle_area(t);
  return s;
}

double TriangleMesh::max_edge() const {
  double m = 0.0;
  for (const Tri& t : triangles)
    for (int i = 0; i < 3; ++i) m = std::max(m, std::abs(vertices[t[i]] - vertices[t[(i + 1) % 3]]));
  return m;
}

std::vector<bool> TriangleMesh::boundary_mask() const {
  std::vector<bool> mask(vertices.size(), false);
  for (int v : boundary_loop) mask[v] = true;
  return mask;
}

std::vector<Point> TriangleMesh::boundary_polygon() const {
  std::vector<Point> poly;
  poly.reserve(boundary_loop.size());
  for (int v : boundary_loop) poly.push_back(vertices[v]);
  return poly;
}

void validate_mesh(const TriangleMesh& mesh) {
  const int nv = mesh.num_vertices();
  if (mesh.triangles.empty()) throw NumericalError("mesh: no triangles");
  std::map<std::pair<int, int>, int> directed;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Tri& tri = mesh.triangles[t];
    for (int v : tri)
      if (v < 0 || v >= nv) throw NumericalError("mesh: triangle " + std::to_string(t) + " has invalid index");
    if (!(mesh.triangle_area(t) > 0))
      throw NumericalError("mesh: triangle " + std::to_string(t) + " has non-positive area");
    for (int i = 0; i < 3; ++i) {
      const auto e = std::make_pair(tri[i], tri[(i + 1) % 3]);
      if (!directed.emplace(e, t).second) throw NumericalError("mesh: not edge-manifold");
    }
  }
  // Boundary edges are the directed edges without a twin.
  std::map<int, int> next;
  for (const auto& [e, t] : directed) {
    if (!directed.count({e.second, e.first})) {
      if (!next.emplace(e.first, e.second).second) throw NumericalError("mesh: boundary is not a simple loop");
    }
  }
  const auto& loop = mesh.boundary_loop;
  if (loop.size() != next.size()) throw NumericalError("mesh: boundary_loop does not match boundary edges");
  for (std::size_t i = 0; i < loop.size(); ++i) {
    auto it = next.find(loop[i]);
    if (it == next.end() || it->second != loop[(i + 1) % loop.size()])
      throw NumericalError("mesh: boundary_loop is not the counterclockwise boundary");
  }
  // Connectivity through shared edges.
  std::vector<std::vector<int>> vt(nv);
  for (int t = 0; t < mesh.num_triangles(); ++t)
    for (int v : mesh.triangles[t]) vt[v].push_back(t);
  std::vector<bool> seen(mesh.triangles.size(), false);
  std::vector<int> stack{0};
  seen[0] = true;
  std::size_t count = 0;
  while (!stack.empty()) {
    const int t = stack.back();
    stack.pop_back();
    ++count;
    for (int v : mesh.triangles[t])
      for (int u : vt[v])
        if (!seen[u]) {
          seen[u] = true;
          stack.push_back(u);
        }
  }
  if (count != mesh.triangles.size()) throw NumericalError("mesh: not connected");
}

std::vector<double> boundary_fractions(const TriangleMesh& mesh) {
  const auto& loop = mesh.boundary_loop;
  const std::size_t n = loop.size();
  std::vector<double> arc(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    arc[i] = total;
    total += std::abs(mesh.vertices[loop[(i + 1) % n]] - mesh.vertices[loop[i]]);
  }
  for (auto& a : arc) a /= total;
  return arc;
}

namespace {

// Unwrapped target fractions u_k with u_0 in [0,1) and u_k strictly increasing,
// u_{n-1} < u_0 + 1. Throws on the first inversion.
std::vector<double> unwrap_fractions(const BoundaryMap& bmap, const Domain& target) {
  const auto& smp = bmap.samples;
  if (smp.size() < 2) throw ConfigError("boundary map: need at least 2 samples");
  for (std::size_t k = 0; k < smp.size(); ++k) {
    if (!(smp[k].s >= 0.0 && smp[k].s < 1.0))
      throw ConfigError("boundary map: sample " + std::to_string(k) + " has s outside [0,1)");
    if (k > 0 && !(smp[k].s > smp[k - 1].s))
      throw ConfigError("boundary map: monotonicity violated at sample " + std::to_string(k) + " (s not increasing)");
  }
  std::vector<double> u(smp.size());
  u[0] = target.fraction_of(smp[0].w);
  for (std::size_t k = 1; k < smp.size(); ++k) {
    double t = target.fraction_of(smp[k].w);
    double d = t - (u[k - 1] - std::floor(u[k - 1]));
    if (d <= 0) d += 1.0;
    u[k] = u[k - 1] + d;
    if (!(u[k] < u[0] + 1.0) || d >= 1.0)
      throw ConfigError("boundary map: monotonicity violated at sample " + std::to_string(k));
  }
  return u;
}

}  // namespace

std::vector<Point> boundary_targets(const TriangleMesh& mesh, const BoundaryMap& bmap, const Domain& target) {
  const auto u = unwrap_fractions(bmap, target);
  const auto& smp = bmap.samples;
  const std::size_t m = smp.size();
  const auto s = boundary_fractions(mesh);
  std::vector<Point> out;
  out.reserve(s.size());
  for (double sv : s) {
    // Bracket sv between consecutive samples cyclically.
    std::size_t k = std::upper_bound(smp.begin(), smp.end(), sv,
                                     [](double x, const BoundarySample& b) { return x < b.s; }) -
                    smp.begin();
    double s0, s1, u0, u1;
    if (k == 0) {
      s0 = smp[m - 1].s - 1.0, u0 = u[m - 1] - 1.0;
      s1 = smp[0].s, u1 = u[0];
    } else if (k == m) {
      s0 = smp[m - 1].s, u0 = u[m - 1];
      s1 = smp[0].s + 1.0, u1 = u[0] + 1.0;
    } else {
      s0 = smp[k - 1].s, u0 = u[k - 1];
      s1 = smp[k].s, u1 = u[k];
    }
    const double lambda = (sv - s0) / (s1 - s0);
    out.push_back(target.point_at(u0 + lambda * (u1 - u0)));
  }
  return out;
}

BoundaryMap invert_boundary_map(const BoundaryMap& bmap, const Domain& source, const Domain& target) {
  const auto u = unwrap_fractions(bmap, target);
  std::vector<BoundarySample> inv;
  inv.reserve(u.size());
  for (std::size_t k = 0; k < u.size(); ++k)
    inv.push_back({u[k] - std::floor(u[k]), source.point_at(bmap.samples[k].s)});
  const auto first = std::min_element(inv.begin(), inv.end(),
                                      [](const auto& a, const auto& b) { return a.s < b.s; });
  std::rotate(inv.begin(), first, inv.end());
  return BoundaryMap{std::move(inv)};
}

}  // namespace hopfmin
