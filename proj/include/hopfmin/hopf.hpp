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
#include <vector>

#include "hopfmin/energy.hpp"
#include "hopfmin/mapping.hpp"
#include "hopfmin/weight.hpp"

namespace hopfmin {

/// Per-triangle Hopf differential phi = w * h_z * conj(h_zbar).
struct HopfField {
  MeshPtr mesh;
  std::vector<Complex> phi;
  // Source data; empty when the field was built from values.
  std::vector<Complex> hz, hzb;
  std::vector<double> weight;
};

/// w = Phi(h(centroid)).
HopfField hopf_differential(const DiscreteMap& h, const WeightFn& phi);
/// w = K_h^(p-1) per triangle (the inner-variational field of the inverse energy).
HopfField inner_variational_field(const DiscreteMap& h, double p);
/// A field from a closure sampled at reference centroids.
HopfField sampled_field(MeshPtr mesh, const std::function<Complex(Point)>& fn);

/// gamma = h_z conj(h_zbar) / |h_z conj(h_zbar)|, or 0 below the relative threshold.
Complex gamma_of(Complex hz, Complex hzb);
std::vector<Complex> gamma_field(const DiscreteMap& h);

struct ResidualReport {
  std::vector<int> vertices;  // interior vertices, ascending
  std::vector<double> loop_residuals;
  double max_rel = 0.0;
  double mean_rel = 0.0;  // weighted by loop area
};

/// For each interior vertex, the trapezoid-rule integral of phi dz around the
/// polygon through its ring's triangle centroids, scaled by
/// sqrt(mesh area / pi) / (loop area * max |phi|).
ResidualReport holomorphy_residual(const HopfField& field);

struct HVTriangle {
  Complex dH, dV;
  double r_sum = 0.0;      // | |dH| - (|h_z| + |h_zbar|) | / (|h_z| + |h_zbar|)
  double r_product = 0.0;  // | |dH||dV| - J | / (|h_z|^2 + |h_zbar|^2)
  double r_energy = 0.0;   // | w(|dH|^2 - |dV|^2) - 4|phi| | / (w(|h_z|^2 + |h_zbar|^2))
  double r_order = 0.0;    // max(|dV|^2 - J, J - |dH|^2, 0) / (|h_z|^2 + |h_zbar|^2)
  bool skipped = false;    // gamma == 0: dH = dV = h_z
};

struct HVReport {
  std::vector<HVTriangle> per_triangle;
  int skipped = 0;
  double max_r_sum = 0.0, max_r_product = 0.0, max_r_energy = 0.0, max_r_order = 0.0;
  double max() const;
};

/// Horizontal and vertical derivatives along the field's own directions.
HVReport hv_derivatives(const HopfField& field);

struct IdentityRecord {
  double lhs = 0.0;
  double rhs_term1 = 0.0;
  double rhs_term2 = 0.0;
  double gap = 0.0;
  /// True when f = H^-1 o h moves the boundary and the H energy was taken
  /// over f(X) by polygon clipping.
  bool clipped = false;
};

/// Both sides of the comparison identity between the weighted energies of H
/// and h, with f = H^-1 o h sampled on h's mesh. Throws NumericalError when
/// f has a triangle with J <= 0.
IdentityRecord integral_identity(const DiscreteMap& h, const DiscreteMap& H, const WeightFn& phi);

}  // namespace hopfmin
