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

#include "hopfmin/hopf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hopfmin/clip.hpp"
#include "hopfmin/locate.hpp"

namespace hopfmin {

namespace {

HopfField from_derivatives(const DiscreteMap& h, const DerivField& d, std::vector<double> w) {
  HopfField f;
  f.mesh = h.reference;
  f.weight = std::move(w);
  for (std::size_t t = 0; t < d.size(); ++t) {
    f.hz.push_back(d[t].fz);
    f.hzb.push_back(d[t].fzb);
    f.phi.push_back(f.weight[t] * d[t].fz * std::conj(d[t].fzb));
  }
  return f;
}

Point image_centroid(const DiscreteMap& h, int t) {
  const Tri& tri = h.reference->triangles[t];
  return (h.targets[tri[0]] + h.targets[tri[1]] + h.targets[tri[2]]) / 3.0;
}

Point reference_centroid(const TriangleMesh& m, int t) {
  const Tri& tri = m.triangles[t];
  return (m.vertices[tri[0]] + m.vertices[tri[1]] + m.vertices[tri[2]]) / 3.0;
}

struct Box {
  double x0, x1, y0, y1;
  bool overlaps(const Box& o) const { return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1; }
};

Box box_of(Point a, Point b, Point c) {
  return {std::min({a.real(), b.real(), c.real()}), std::max({a.real(), b.real(), c.real()}),
          std::min({a.imag(), b.imag(), c.imag()}), std::max({a.imag(), b.imag(), c.imag()})};
}

// Energy of H restricted to the union of the triangles f(T).
double clipped_energy(const DiscreteMap& H, const DiscreteMap& f, const WeightFn& phi) {
  const TriangleMesh& S = *H.reference;
  const auto dH = derivatives(H);
  std::vector<Box> sbox(S.num_triangles());
  for (int s = 0; s < S.num_triangles(); ++s) {
    const Tri& t = S.triangles[s];
    sbox[s] = box_of(S.vertices[t[0]], S.vertices[t[1]], S.vertices[t[2]]);
  }
  double total = 0.0;
  const TriangleMesh& X = *f.reference;
  for (int s = 0; s < S.num_triangles(); ++s) {
    const Tri& st = S.triangles[s];
    const std::vector<Point> clip{S.vertices[st[0]], S.vertices[st[1]], S.vertices[st[2]]};
    const double dens = 2.0 * (std::norm(dH[s].fz) + std::norm(dH[s].fzb));
    double part = 0.0;
    for (int t = 0; t < X.num_triangles(); ++t) {
      const Tri& tt = X.triangles[t];
      const Point a = f.targets[tt[0]], b = f.targets[tt[1]], c = f.targets[tt[2]];
      if (!box_of(a, b, c).overlaps(sbox[s])) continue;
      const auto poly = clip_convex({a, b, c}, clip);
      if (poly.size() < 3) continue;
      const double area = signed_area(poly);
      if (area <= 0) continue;
      // H is affine on s: its value at the piece centroid is the image of that centroid.
      const Point pc = polygon_centroid(poly);
      const Point Hc = dH[s].fz * (pc - clip[0]) + dH[s].fzb * std::conj(pc - clip[0]) + H.targets[st[0]];
      const double w = phi(Hc);
      if (!(w > 0)) throw ConfigError("weight: nonpositive sample");
      part += w * dens * area;
    }
    total += part;
  }
  return total;
}

}  // namespace

HopfField hopf_differential(const DiscreteMap& h, const WeightFn& phi) {
  const auto d = derivatives(h);
  std::vector<double> w(d.size());
  for (std::size_t t = 0; t < d.size(); ++t) {
    const Point c = image_centroid(h, static_cast<int>(t));
    w[t] = phi(c);
    if (!(w[t] > 0)) throw ConfigError("weight: nonpositive sample");
  }
  return from_derivatives(h, d, std::move(w));
}

HopfField inner_variational_field(const DiscreteMap& h, double p) {
  const auto d = derivatives(h);
  std::vector<double> w(d.size());
  for (std::size_t t = 0; t < d.size(); ++t) w[t] = std::pow(d[t].K, p - 1.0);
  return from_derivatives(h, d, std::move(w));
}

HopfField sampled_field(MeshPtr mesh, const std::function<Complex(Point)>& fn) {
  HopfField f;
  for (int t = 0; t < mesh->num_triangles(); ++t) f.phi.push_back(fn(reference_centroid(*mesh, t)));
  f.mesh = std::move(mesh);
  return f;
}

Complex gamma_of(Complex hz, Complex hzb) {
  const Complex q = hz * std::conj(hzb);
  if (std::abs(q) < 1e-14 * (std::norm(hz) + std::norm(hzb))) return 0.0;
  return q / std::abs(q);
}

std::vector<Complex> gamma_field(const DiscreteMap& h) {
  std::vector<Complex> g;
  for (const auto& d : derivatives(h)) g.push_back(gamma_of(d.fz, d.fzb));
  return g;
}

ResidualReport holomorphy_residual(const HopfField& field) {
  const TriangleMesh& M = *field.mesh;
  const auto topo = MeshTopology::build(M);
  double phimax = 0.0;
  for (const auto& v : field.phi) phimax = std::max(phimax, std::abs(v));
  const double L = std::sqrt(M.total_area() / std::numbers::pi);
  ResidualReport r;
  double wsum = 0.0, asum = 0.0;
  for (int v = 0; v < M.num_vertices(); ++v) {
    const auto ring = topo.ring(M, v);
    if (ring.empty()) continue;
    std::vector<Point> c;
    for (int t : ring) c.push_back(reference_centroid(M, t));
    Complex loop = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const std::size_t j = (i + 1) % ring.size();
      loop += 0.5 * (field.phi[ring[i]] + field.phi[ring[j]]) * (c[j] - c[i]);
    }
    const double A = signed_area(c);
    const double res = phimax > 0 ? std::abs(loop) * L / (A * phimax) : 0.0;
    r.vertices.push_back(v);
    r.loop_residuals.push_back(res);
    r.max_rel = std::max(r.max_rel, res);
    wsum += res * A;
    asum += A;
  }
  if (r.vertices.empty()) throw NumericalError("holomorphy_residual: mesh has no interior vertex");
  r.mean_rel = wsum / asum;
  return r;
}

double HVReport::max() const { return std::max({max_r_sum, max_r_product, max_r_energy, max_r_order}); }

HVReport hv_derivatives(const HopfField& field) {
  if (field.hz.size() != field.phi.size()) throw ConfigError("hv_derivatives: field carries no source derivatives");
  HVReport rep;
  for (std::size_t t = 0; t < field.phi.size(); ++t) {
    const Complex hz = field.hz[t], hzb = field.hzb[t], phi = field.phi[t];
    const double w = field.weight[t];
    const double a = std::abs(hz), b = std::abs(hzb), s2 = a * a + b * b, J = a * a - b * b;
    HVTriangle r;
    // Same zero test as gamma; with w > 0, phi/|phi| is gamma.
    const Complex u = gamma_of(hz, hzb);
    if (u == 0.0) {
      r.dH = r.dV = hz;
      r.skipped = true;
      ++rep.skipped;
    } else {
      r.dH = hz + u * hzb;
      r.dV = hz - u * hzb;
      const double H = std::abs(r.dH), V = std::abs(r.dV);
      r.r_sum = std::abs(H - (a + b)) / (a + b);
      r.r_product = std::abs(H * V - J) / s2;
      r.r_energy = std::abs(w * (H * H - V * V) - 4.0 * std::abs(phi)) / (w * s2);
      r.r_order = std::max({V * V - J, J - H * H, 0.0}) / s2;
    }
    rep.max_r_sum = std::max(rep.max_r_sum, r.r_sum);
    rep.max_r_product = std::max(rep.max_r_product, r.r_product);
    rep.max_r_energy = std::max(rep.max_r_energy, r.r_energy);
    rep.max_r_order = std::max(rep.max_r_order, r.r_order);
    rep.per_triangle.push_back(r);
  }
  return rep;
}

IdentityRecord integral_identity(const DiscreteMap& h, const DiscreteMap& H, const WeightFn& phi) {
  const DiscreteMap f = compose(invert(H), h);
  const auto fd = derivatives(f);
  {
    std::ostringstream bad;
    int nbad = 0;
    for (std::size_t t = 0; t < fd.size(); ++t)
      if (!fd[t].orientation_ok && nbad++ < 10) bad << " " << t;
    if (nbad) throw NumericalError("integral_identity: f = H^-1 o h has triangles with J <= 0:" + bad.str());
  }
  const auto hd = derivatives(h);
  const TriangleMesh& X = *h.reference;
  IdentityRecord r;
  for (int t = 0; t < X.num_triangles(); ++t) {
    const double w = phi(image_centroid(h, t));
    const Complex g = gamma_of(hd[t].fz, hd[t].fzb);
    const double a = std::abs(hd[t].fz), b = std::abs(hd[t].fzb);
    const double Jf = fd[t].J, A = fd[t].area;
    r.rhs_term1 += 4.0 * (std::norm(fd[t].fz - g * fd[t].fzb) / Jf - 1.0) * w * a * b * A;
    r.rhs_term2 += 4.0 * w * (a - b) * (a - b) * std::norm(fd[t].fzb) / Jf * A;
  }
  double drift = 0.0;
  for (int v : X.boundary_loop) drift = std::max(drift, std::abs(f.targets[v] - X.vertices[v]));
  const double Eh = weighted_dirichlet(h, phi).total;
  if (drift <= 1e-12 * (1.0 + X.max_edge())) {
    r.lhs = weighted_dirichlet(H, phi).total - Eh;
  } else {
    r.clipped = true;
    r.lhs = clipped_energy(H, f, phi) - Eh;
  }
  r.gap = std::abs(r.lhs - (r.rhs_term1 + r.rhs_term2));
  return r;
}

}  // namespace hopfmin
