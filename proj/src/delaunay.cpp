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

// Constrained Bowyer-Watson mesher behind triangulate().

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_set>

#include "hopfmin/geometry.hpp"

namespace hopfmin {

namespace {

long double orient_ld(Point a, Point b, Point c) {
  const long double ax = a.real(), ay = a.imag();
  return (static_cast<long double>(b.real()) - ax) * (static_cast<long double>(c.imag()) - ay) -
         (static_cast<long double>(b.imag()) - ay) * (static_cast<long double>(c.real()) - ax);
}

// > 0 when d lies strictly inside the circumcircle of the counterclockwise triangle abc.
long double incircle(Point a, Point b, Point c, Point d) {
  const long double adx = a.real() - static_cast<long double>(d.real());
  const long double ady = a.imag() - static_cast<long double>(d.imag());
  const long double bdx = b.real() - static_cast<long double>(d.real());
  const long double bdy = b.imag() - static_cast<long double>(d.imag());
  const long double cdx = c.real() - static_cast<long double>(d.real());
  const long double cdy = c.imag() - static_cast<long double>(d.imag());
  const long double ad = adx * adx + ady * ady;
  const long double bd = bdx * bdx + bdy * bdy;
  const long double cd = cdx * cdx + cdy * cdy;
  return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx);
}

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

class Triangulator {
 public:
  struct Face {
    std::array<int, 3> v;
    std::array<int, 3> nbr;  // nbr[i] lies across the edge opposite v[i]
    bool alive = true;
    bool inside = false;
  };

  explicit Triangulator(const std::vector<Point>& hull_hint) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& p : hull_hint) {
      xmin = std::min(xmin, p.real()), xmax = std::max(xmax, p.real());
      ymin = std::min(ymin, p.imag()), ymax = std::max(ymax, p.imag());
    }
    const Point c((xmin + xmax) / 2, (ymin + ymax) / 2);
    const double r = std::max(xmax - xmin, ymax - ymin) * 50.0 + 1.0;
    pts_ = {c + Point(-2 * r, -r), c + Point(2 * r, -r), c + Point(0, 2 * r)};
    faces_.push_back({{0, 1, 2}, {-1, -1, -1}});
  }

  static constexpr int kSuper = 3;

  const std::vector<Point>& points() const { return pts_; }
  std::vector<Face>& faces() { return faces_; }

  void constrain(int a, int b) { constrained_.insert(edge_key(a, b)); }
  bool is_constrained(int a, int b) const { return constrained_.count(edge_key(a, b)) > 0; }

  bool has_edge(int a, int b) const {
    for (const auto& f : faces_) {
      if (!f.alive) continue;
      for (int i = 0; i < 3; ++i)
        if ((f.v[i] == a && f.v[(i + 1) % 3] == b) || (f.v[i] == b && f.v[(i + 1) % 3] == a)) return true;
    }
    return false;
  }

  int insert(Point p, bool inside_flag = false) {
    const int pid = static_cast<int>(pts_.size());
    pts_.push_back(p);
    const int t0 = locate(p);
    // Cavity: triangles whose circumcircle contains p, reachable without
    // crossing a constrained edge.
    std::vector<int> cavity{t0};
    mark_.resize(faces_.size(), 0);
    mark_[t0] = 1;
    for (std::size_t k = 0; k < cavity.size(); ++k) {
      const Face& f = faces_[cavity[k]];
      for (int i = 0; i < 3; ++i) {
        const int n = f.nbr[i];
        if (n < 0 || mark_[n]) continue;
        if (is_constrained(f.v[(i + 1) % 3], f.v[(i + 2) % 3])) continue;
        const Face& g = faces_[n];
        if (incircle(pts_[g.v[0]], pts_[g.v[1]], pts_[g.v[2]], p) > 0) {
          mark_[n] = 1;
          cavity.push_back(n);
        }
      }
    }
    // Keep the cavity star-shaped from p.
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t k = 0; k < cavity.size(); ++k) {
        const int t = cavity[k];
        if (t == t0) continue;
        const Face& f = faces_[t];
        for (int i = 0; i < 3; ++i) {
          const int n = f.nbr[i];
          if (n >= 0 && mark_[n]) continue;
          if (orient_ld(pts_[f.v[(i + 1) % 3]], pts_[f.v[(i + 2) % 3]], p) <= 0) {
            mark_[t] = 0;
            cavity.erase(cavity.begin() + static_cast<long>(k));
            changed = true;
            break;
          }
        }
        if (changed) break;
      }
    }
    struct Rim {
      int a, b, outside;
    };
    std::vector<Rim> rim;
    for (int t : cavity) {
      const Face& f = faces_[t];
      for (int i = 0; i < 3; ++i) {
        const int n = f.nbr[i];
        if (n >= 0 && mark_[n]) continue;
        rim.push_back({f.v[(i + 1) % 3], f.v[(i + 2) % 3], n});
      }
    }
    for (int t : cavity) {
      faces_[t].alive = false;
      mark_[t] = 0;
    }
    const int base = static_cast<int>(faces_.size());
    for (std::size_t k = 0; k < rim.size(); ++k) {
      const auto& r = rim[k];
      Face f{{r.a, r.b, pid}, {-1, -1, r.outside}};
      f.inside = inside_flag;
      const int id = base + static_cast<int>(k);
      faces_.push_back(f);
      if (r.outside >= 0) {
        Face& g = faces_[r.outside];
        for (int i = 0; i < 3; ++i)
          if (g.v[(i + 1) % 3] == r.b && g.v[(i + 2) % 3] == r.a) g.nbr[i] = id;
      }
    }
    for (std::size_t k = 0; k < rim.size(); ++k) {
      Face& f = faces_[base + static_cast<int>(k)];
      for (std::size_t j = 0; j < rim.size(); ++j) {
        if (rim[j].a == f.v[1]) f.nbr[0] = base + static_cast<int>(j);  // edge (b, p)
        if (rim[j].b == f.v[0]) f.nbr[1] = base + static_cast<int>(j);  // edge (p, a)
      }
    }
    mark_.resize(faces_.size(), 0);
    last_ = base;
    return pid;
  }

 private:
  int locate(Point p) const {
    int t = last_;
    if (t < 0 || t >= static_cast<int>(faces_.size()) || !faces_[t].alive) {
      for (t = static_cast<int>(faces_.size()) - 1; t >= 0 && !faces_[t].alive; --t) {
      }
    }
    const std::size_t limit = 4 * faces_.size() + 64;
    for (std::size_t step = 0; step < limit; ++step) {
      const Face& f = faces_[t];
      int next = -1;
      long double worst = 0;
      for (int i = 0; i < 3; ++i) {
        const long double o = orient_ld(pts_[f.v[(i + 1) % 3]], pts_[f.v[(i + 2) % 3]], p);
        if (o < worst && f.nbr[i] >= 0) {
          worst = o;
          next = f.nbr[i];
        }
      }
      if (next < 0) return t;
      t = next;
    }
    for (int k = 0; k < static_cast<int>(faces_.size()); ++k) {
      const Face& f = faces_[k];
      if (!f.alive) continue;
      if (orient_ld(pts_[f.v[0]], pts_[f.v[1]], p) >= 0 && orient_ld(pts_[f.v[1]], pts_[f.v[2]], p) >= 0 &&
          orient_ld(pts_[f.v[2]], pts_[f.v[0]], p) >= 0)
        return k;
    }
    throw NumericalError("triangulate: point location failed");
  }

  std::vector<Point> pts_;
  std::vector<Face> faces_;
  std::unordered_set<std::uint64_t> constrained_;
  std::vector<char> mark_;
  int last_ = 0;
};

}  // namespace

TriangleMesh triangulate(const Domain& domain, double target_edge) {
  if (!(target_edge > 0)) throw ConfigError("triangulate: target_edge must be positive");
  const auto& poly = domain.vertices;
  if (poly.size() < 3 || !(signed_area(poly) > 0)) throw ConfigError("triangulate: degenerate polygon");
  const double h = target_edge;

  // Boundary points, each polygon edge split into pieces of length <= h.
  std::vector<Point> boundary;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point a = poly[i], b = poly[(i + 1) % poly.size()];
    const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / h - 1e-9)));
    for (int k = 0; k < pieces; ++k) boundary.push_back(a + (b - a) * (static_cast<double>(k) / pieces));
  }

  Triangulator tr(poly);
  std::vector<int> loop;
  for (const auto& p : boundary) loop.push_back(tr.insert(p));

  // Recover boundary segments by splitting (conforming Delaunay).
  for (int guard = 0;; ++guard) {
    if (guard > 64) throw NumericalError("triangulate: boundary recovery did not converge");
    std::vector<int> next_loop;
    bool split = false;
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const int a = loop[i], b = loop[(i + 1) % loop.size()];
      next_loop.push_back(a);
      if (!tr.has_edge(a, b)) {
        next_loop.push_back(tr.insert(0.5 * (tr.points()[a] + tr.points()[b])));
        split = true;
      }
    }
    loop = std::move(next_loop);
    if (!split) break;
  }
  for (std::size_t i = 0; i < loop.size(); ++i) tr.constrain(loop[i], loop[(i + 1) % loop.size()]);

  // Interior lattice points, kept clear of the boundary so that every
  // boundary segment keeps an empty diametral circle.
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& p : poly) {
    xmin = std::min(xmin, p.real()), xmax = std::max(xmax, p.real());
    ymin = std::min(ymin, p.imag()), ymax = std::max(ymax, p.imag());
  }
  const double dy = h * std::sqrt(3.0) / 2.0;
  const int nx = static_cast<int>(std::floor((xmax - xmin) / h));
  const int ny = static_cast<int>(std::floor((ymax - ymin) / dy));
  const double x0 = xmin + 0.5 * ((xmax - xmin) - nx * h);
  const double y0 = ymin + 0.5 * ((ymax - ymin) - ny * dy);
  for (int j = 0; j <= ny; ++j) {
    const int start = (j & 1) ? -1 : 0;
    for (int i = start; i <= nx; ++i) {
      const Point p(x0 + (i + 0.5 * (j & 1)) * h, y0 + j * dy);
      if (domain.contains(p) && domain.boundary_distance(p) >= 0.55 * h) tr.insert(p);
    }
  }

  // Classify: flood the exterior from the super triangle without crossing constraints.
  auto& faces = tr.faces();
  {
    std::vector<char> outside(faces.size(), 0);
    std::vector<int> stack;
    for (int t = 0; t < static_cast<int>(faces.size()); ++t) {
      const auto& f = faces[t];
      if (f.alive && (f.v[0] < Triangulator::kSuper || f.v[1] < Triangulator::kSuper || f.v[2] < Triangulator::kSuper)) {
        outside[t] = 1;
        stack.push_back(t);
      }
    }
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      const auto f = faces[t];
      for (int i = 0; i < 3; ++i) {
        const int n = f.nbr[i];
        if (n < 0 || outside[n] || tr.is_constrained(f.v[(i + 1) % 3], f.v[(i + 2) % 3])) continue;
        outside[n] = 1;
        stack.push_back(n);
      }
    }
    for (int t = 0; t < static_cast<int>(faces.size()); ++t) faces[t].inside = faces[t].alive && !outside[t];
  }

  // Longest-edge midpoint refinement until every edge is <= 1.5 h.
  const double limit = 1.5 * h;
  for (bool changed = true; changed;) {
    changed = false;
    const int count = static_cast<int>(faces.size());
    for (int t = 0; t < count; ++t) {
      if (!faces[t].alive || !faces[t].inside) continue;
      const auto v = faces[t].v;
      const auto& P = tr.points();
      int best = -1;
      double len = limit;
      for (int i = 0; i < 3; ++i) {
        const double l = std::abs(P[v[(i + 1) % 3]] - P[v[i]]);
        if (l > len) len = l, best = i;
      }
      if (best < 0) continue;
      if (tr.is_constrained(v[best], v[(best + 1) % 3])) continue;
      tr.insert(0.5 * (P[v[best]] + P[v[(best + 1) % 3]]), true);
      changed = true;
    }
  }

  // Renumber: boundary loop first, then interior points in insertion order.
  const auto& P = tr.points();
  std::vector<int> remap(P.size(), -1);
  TriangleMesh mesh;
  for (int v : loop) {
    remap[v] = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(P[v]);
  }
  std::vector<char> used(P.size(), 0);
  for (const auto& f : faces)
    if (f.alive && f.inside)
      for (int v : f.v) used[v] = 1;
  for (int v = Triangulator::kSuper; v < static_cast<int>(P.size()); ++v) {
    if (remap[v] < 0 && used[v]) {
      remap[v] = static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back(P[v]);
    }
  }
  for (const auto& f : faces) {
    if (!f.alive || !f.inside) continue;
    Tri t{remap[f.v[0]], remap[f.v[1]], remap[f.v[2]]};
    std::rotate(t.begin(), std::min_element(t.begin(), t.end()), t.end());
    mesh.triangles.push_back(t);
  }
  std::sort(mesh.triangles.begin(), mesh.triangles.end());
  for (std::size_t i = 0; i < loop.size(); ++i) mesh.boundary_loop.push_back(static_cast<int>(i));
  validate_mesh(mesh);
  return mesh;
}

}  // namespace hopfmin
