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

#include "hopfmin/smooth_map.hpp"

#include <cmath>
#include <numbers>

namespace hopfmin {

namespace {

// max over s of 8 s (1 - s^2)^3, attained at s^2 = 1/7; Lipschitz constant of a unit bump times r.
constexpr double kBumpSlope = 1.904147549153802;

struct Displacement {
  Point value;
  Complex dz, dzb;
};

Displacement displacement(const std::vector<Bump>& bumps, Point z) {
  Displacement d{0.0, 0.0, 0.0};
  for (const auto& b : bumps) {
    const Point q = z - b.center;
    const double u = std::norm(q) / (b.radius * b.radius);
    if (u >= 1.0) continue;
    const double s = 1.0 - u;
    d.value += b.amplitude * (s * s * s * s);
    const Complex dpsi = b.amplitude * (-4.0 * s * s * s) / (b.radius * b.radius);
    d.dz += dpsi * std::conj(q);
    d.dzb += dpsi * q;
  }
  return d;
}

}  // namespace

Point SmoothMap::operator()(Point z) const { return affine(z + displacement(bumps, z).value); }

std::pair<Complex, Complex> SmoothMap::wirtinger(Point z) const {
  const auto d = displacement(bumps, z);
  const Complex gz = 1.0 + d.dz, gzb = d.dzb;
  return {affine.a * gz + affine.b * std::conj(gzb), affine.a * gzb + affine.b * std::conj(gz)};
}

Point SmoothMap::inverse(Point w) const {
  const Point u = affine.inverse()(w);
  Point z = u;
  const double scale = 1.0 + std::abs(u);
  for (int it = 0; it < 100; ++it) {
    const auto d = displacement(bumps, z);
    const Complex r = z + d.value - u;
    if (std::abs(r) <= 1e-15 * scale) return z;
    const Complex gz = 1.0 + d.dz, gzb = d.dzb;
    const double J = std::norm(gz) - std::norm(gzb);
    z -= (std::conj(gz) * r - gzb * std::conj(r)) / J;
  }
  const auto d = displacement(bumps, z);
  if (std::abs(z + d.value - u) <= 1e-13 * scale) return z;
  throw NumericalError("smooth map: Newton inversion did not converge");
}

SmoothMap random_smooth_map(std::mt19937_64& rng, const Domain& support, int n_bumps, double strength,
                            const AffineMap& affine, double min_radius) {
  SmoothMap m;
  m.affine = affine;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& p : support.vertices) {
    xmin = std::min(xmin, p.real()), xmax = std::max(xmax, p.real());
    ymin = std::min(ymin, p.imag()), ymax = std::max(ymax, p.imag());
  }
  std::uniform_real_distribution<double> ux(xmin, xmax), uy(ymin, ymax), unit(0.0, 1.0);
  const double rmax = 0.6 * std::max(xmax - xmin, ymax - ymin);
  while (static_cast<int>(m.bumps.size()) < n_bumps) {
    const Point c(ux(rng), uy(rng));
    if (!support.contains(c)) continue;
    const double room = 0.98 * support.boundary_distance(c);
    const double r = std::min(room, rmax * (0.3 + 0.7 * unit(rng)));
    if (r < min_radius * std::max(xmax - xmin, ymax - ymin)) continue;
    const double mag = strength / n_bumps * r / kBumpSlope * (0.5 + 0.5 * unit(rng));
    m.bumps.push_back({c, r, std::polar(mag, 2.0 * std::numbers::pi * unit(rng))});
  }
  return m;
}

AffineMap random_affine(std::mt19937_64& rng, double max_ratio) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  AffineMap a;
  a.a = std::polar(0.5 + 1.5 * unit(rng), 2.0 * std::numbers::pi * unit(rng));
  a.b = std::polar(std::abs(a.a) * max_ratio * unit(rng), 2.0 * std::numbers::pi * unit(rng));
  a.c = 0.0;
  return a;
}

}  // namespace hopfmin
