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

#include <optional>
#include <string>
#include <vector>

#include "hopfmin/mapping.hpp"
#include "hopfmin/weight.hpp"

namespace hopfmin {

struct EnergyBreakdown {
  std::string functional;
  double p = 0.0;  // 0 for the weighted Dirichlet energy
  double total = 0.0;
  /// Factor relating |D.|^2 in this functional to the HS norm 2(|h_z|^2 + |h_zbar|^2).
  double convention_constant = 1.0;
  std::vector<double> per_triangle;
  std::vector<int> offenders;  // triangles with J <= 0
  double min_density = 0.0;
  double max_density = 0.0;

  bool finite() const;
};

/// Definition: report K of |J| on flipped triangles (listed as offenders).
/// Optimization: any J <= 0 makes the total +inf.
enum class Mode { Definition, Optimization };

enum class Quadrature { Centroid, ThreePoint };

/// sum_T K_T^p |T|
EnergyBreakdown mean_distortion(const DiscreteMap& f, double p, Mode mode = Mode::Definition,
                                bool parallel = true);
/// sum_T K_T^(p-1) (|h_z|^2 + |h_zbar|^2) |T|;  +inf if any J <= 0.
EnergyBreakdown inverse_energy(const DiscreteMap& h, double p, bool parallel = true);
/// sum_T Phi(h(centroid)) 2(|h_z|^2 + |h_zbar|^2) |T|.  Throws ConfigError on a nonpositive sample.
EnergyBreakdown weighted_dirichlet(const DiscreteMap& h, const WeightFn& phi,
                                   Quadrature q = Quadrature::Centroid, bool parallel = true);

struct HolderRecord {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
};

/// lhs = weighted_dirichlet(g, K_f^(p-1));
/// rhs = 2 mean_distortion(f, p)^((p-1)/p) mean_distortion(g^-1, p)^(1/p).
HolderRecord holder_check(const DiscreteMap& f, const DiscreteMap& g, double p);

enum class Functional { MeanDistortion, InverseEnergy, WeightedDirichlet };

std::string functional_name(Functional f);
Functional parse_functional(const std::string& name);

/// An energy as a function of the vertex targets over a fixed reference mesh,
/// with its gradient packed as d/dx + i d/dy per vertex.
class Objective {
 public:
  Objective(MeshPtr reference, Functional kind, double p, std::optional<WeightFn> phi = std::nullopt,
            bool parallel = true);

  double value(std::span<const Point> targets) const;
  /// Returns +inf (and leaves grad zero) when a triangle has J <= 0;
  /// the weighted Dirichlet energy is finite for every map.
  double value_and_gradient(std::span<const Point> targets, std::vector<Complex>& grad) const;
  /// Same, also returning the per-triangle energies.
  double value_and_gradient(std::span<const Point> targets, std::vector<Complex>& grad,
                            std::vector<double>& per_triangle) const;
  /// Per-triangle weights of the metric used to precondition descent.
  std::vector<double> metric_weights(std::span<const Point> targets) const;

  const ReferenceFrames& frames() const { return frames_; }
  const MeshPtr& reference() const { return reference_; }
  Functional kind() const { return kind_; }
  double p() const { return p_; }
  const std::optional<WeightFn>& phi() const { return phi_; }
  bool parallel() const { return parallel_; }

 private:
  double run(std::span<const Point> targets, std::vector<Complex>* grad, std::vector<double>* per_triangle) const;

  MeshPtr reference_;
  ReferenceFrames frames_;
  Functional kind_;
  double p_;
  std::optional<WeightFn> phi_;
  bool parallel_;
};

namespace densities {

// Energy densities per unit reference area, in terms of a = |f_z|^2, b = |f_zbar|^2.

struct MeanDistortion {
  double p;
  kernels::DensityValue operator()(int, const kernels::Jet& j, Point) const {
    const double a = std::norm(j.fz), b = std::norm(j.fzb), d = a - b;
    kernels::DensityValue v;
    if (!(d > 0)) {
      v.psi = std::numeric_limits<double>::infinity();
      return v;
    }
    const double K = (a + b) / d;
    const double Kp1 = std::pow(K, p - 1.0);
    v.psi = Kp1 * K;
    v.psi_a = p * Kp1 * (-2.0 * b) / (d * d);
    v.psi_b = p * Kp1 * (2.0 * a) / (d * d);
    return v;
  }
};

struct InverseEnergy {
  double p;
  kernels::DensityValue operator()(int, const kernels::Jet& j, Point) const {
    const double a = std::norm(j.fz), b = std::norm(j.fzb), s = a + b, d = a - b;
    kernels::DensityValue v;
    if (!(d > 0)) {
      v.psi = std::numeric_limits<double>::infinity();
      return v;
    }
    const double Kp1 = std::pow(s / d, p - 1.0);  // K^(p-1)
    v.psi = Kp1 * s;
    const double u = p * Kp1, w = (1.0 - p) * Kp1 * s / d;
    v.psi_a = u + w;
    v.psi_b = u - w;
    return v;
  }
};

struct WeightedDirichlet {
  const WeightFn* phi;
  kernels::DensityValue operator()(int, const kernels::Jet& j, Point c) const {
    const double s = std::norm(j.fz) + std::norm(j.fzb);
    const double w = (*phi)(c);
    kernels::DensityValue v;
    v.psi = 2.0 * w * s;
    v.psi_a = v.psi_b = 2.0 * w;
    if (!phi->is_constant()) v.psi_c = 2.0 * s * phi->gradient(c);
    return v;
  }
};

}  // namespace densities

}  // namespace hopfmin
