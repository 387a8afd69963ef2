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

// Per-triangle kernels over a reference mesh. Every kernel exists twice: a
// plain serial loop (the reference) and an OpenMP version. Both perform the
// same floating-point operations per triangle, and all reductions run in a
// fixed order, so their outputs agree bit for bit.

#include <cmath>
#include <span>
#include <vector>

#include "hopfmin/geometry.hpp"

namespace hopfmin {

/// Constant per-triangle data of a reference mesh. The Wirtinger derivatives
/// of a piecewise-linear map are linear in its vertex targets:
///   f_z = sum_i alpha[t][i] * target[tri[i]],  f_zbar = sum_i beta[t][i] * target[tri[i]].
/// They are evaluated from edge differences, d_k = target[tri[k]] - target[tri[0]]:
///   f_z = (conj(e2) d1 - conj(e1) d2) / (i s),  f_zbar = (e1 d2 - e2 d1) / (i s),
/// which is exact for the identity and for translations.
struct ReferenceFrames {
  std::vector<Tri> tris;
  std::vector<std::array<Complex, 2>> edges;  // e1, e2 of the reference triangle
  std::vector<double> det_im;                 // s = Im(e1 conj(e2) - conj(e1) e2)
  std::vector<std::array<Complex, 3>> alpha;
  std::vector<std::array<Complex, 3>> beta;
  std::vector<double> area;
  /// CSR lists of (3 * triangle + local) slots per vertex, ascending.
  std::vector<int> gather_offsets;
  std::vector<int> gather_slots;

  static ReferenceFrames build(const TriangleMesh& mesh);
  int num_triangles() const { return static_cast<int>(tris.size()); }
  int num_vertices() const { return static_cast<int>(gather_offsets.size()) - 1; }
};

namespace kernels {

struct Jet {
  Complex fz;
  Complex fzb;
};

/// Energy density per unit reference area and its partials with respect to
/// a = |f_z|^2, b = |f_zbar|^2 and the image centroid.
struct DensityValue {
  double psi = 0.0;
  double psi_a = 0.0;
  double psi_b = 0.0;
  Complex psi_c{0.0, 0.0};  // gradient w.r.t. the image centroid, packed as d/dx + i d/dy
};

inline Jet jet_of(const ReferenceFrames& fr, std::span<const Point> targets, int t) {
  const Tri& tri = fr.tris[t];
  const Complex e1 = fr.edges[t][0], e2 = fr.edges[t][1];
  const Complex d1 = targets[tri[1]] - targets[tri[0]], d2 = targets[tri[2]] - targets[tri[0]];
  const Complex nz = std::conj(e2) * d1 - std::conj(e1) * d2;
  const Complex nzb = e1 * d2 - e2 * d1;
  const double s = fr.det_im[t];
  // n / (i s) = (Im n - i Re n) / s
  Jet j;
  j.fz = Complex(nz.imag() / s, -nz.real() / s);
  j.fzb = Complex(nzb.imag() / s, -nzb.real() / s);
  return j;
}

inline Point image_centroid(const ReferenceFrames& fr, std::span<const Point> targets, int t) {
  const Tri& tri = fr.tris[t];
  return (targets[tri[0]] + targets[tri[1]] + targets[tri[2]]) / 3.0;
}

// Triangle energy and the gradient with respect to its three targets.
template <class Density>
inline double triangle_energy(const ReferenceFrames& fr, std::span<const Point> targets, int t,
                              const Density& density, Complex* grad3) {
  const Jet j = jet_of(fr, targets, t);
  const DensityValue d = density(t, j, image_centroid(fr, targets, t));
  const double A = fr.area[t];
  if (!std::isfinite(d.psi)) {
    for (int i = 0; i < 3; ++i) grad3[i] = 0.0;
    return d.psi;
  }
  for (int i = 0; i < 3; ++i) {
    grad3[i] = A * (2.0 * d.psi_a * j.fz * std::conj(fr.alpha[t][i]) +
                    2.0 * d.psi_b * j.fzb * std::conj(fr.beta[t][i]) + d.psi_c / 3.0);
  }
  return A * d.psi;
}

namespace serial {

inline void wirtinger(const ReferenceFrames& fr, std::span<const Point> targets, std::span<Jet> out) {
  for (int t = 0; t < fr.num_triangles(); ++t) out[t] = jet_of(fr, targets, t);
}

template <class Density>
void evaluate(const ReferenceFrames& fr, std::span<const Point> targets, const Density& density,
              std::span<double> energy, std::span<Complex> grad3) {
  for (int t = 0; t < fr.num_triangles(); ++t)
    energy[t] = triangle_energy(fr, targets, t, density, &grad3[3 * static_cast<std::size_t>(t)]);
}

inline void gather(const ReferenceFrames& fr, std::span<const Complex> grad3, std::span<Complex> out) {
  for (int v = 0; v < fr.num_vertices(); ++v) {
    Complex s = 0.0;
    for (int k = fr.gather_offsets[v]; k < fr.gather_offsets[v + 1]; ++k) s += grad3[fr.gather_slots[k]];
    out[v] = s;
  }
}

}  // namespace serial

namespace omp {

inline void wirtinger(const ReferenceFrames& fr, std::span<const Point> targets, std::span<Jet> out) {
  const int n = fr.num_triangles();
#pragma omp parallel for schedule(static)
  for (int t = 0; t < n; ++t) out[t] = jet_of(fr, targets, t);
}

template <class Density>
void evaluate(const ReferenceFrames& fr, std::span<const Point> targets, const Density& density,
              std::span<double> energy, std::span<Complex> grad3) {
  const int n = fr.num_triangles();
#pragma omp parallel for schedule(static)
  for (int t = 0; t < n; ++t)
    energy[t] = triangle_energy(fr, targets, t, density, &grad3[3 * static_cast<std::size_t>(t)]);
}

inline void gather(const ReferenceFrames& fr, std::span<const Complex> grad3, std::span<Complex> out) {
  const int n = fr.num_vertices();
#pragma omp parallel for schedule(static)
  for (int v = 0; v < n; ++v) {
    Complex s = 0.0;
    for (int k = fr.gather_offsets[v]; k < fr.gather_offsets[v + 1]; ++k) s += grad3[fr.gather_slots[k]];
    out[v] = s;
  }
}

}  // namespace omp

/// Neumaier-compensated sum in index order; the one reduction every energy uses.
inline double ordered_sum(std::span<const double> values) {
  double s = 0.0, c = 0.0;
  for (double v : values) {
    const double t = s + v;
    c += std::abs(s) >= std::abs(v) ? (s - t) + v : (v - t) + s;
    s = t;
  }
  return std::isfinite(s) ? s + c : s;
}

}  // namespace kernels
}  // namespace hopfmin
