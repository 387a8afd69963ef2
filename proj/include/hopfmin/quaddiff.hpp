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

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hopfmin/geometry.hpp"

namespace hopfmin {

/// phi(z) dz^2 on a polygonal domain.
class QuadraticDifferential {
 public:
  /// Coefficients in ascending order: phi(z) = sum_k c_k z^k. Zeros inside
  /// the domain become the critical points.
  static QuadraticDifferential polynomial(std::vector<Complex> coeffs, Domain domain);
  static QuadraticDifferential analytic(std::function<Complex(Point)> phi, Domain domain,
                                        std::vector<Point> critical_points);
  /// "z", "1", "-1", "z^2-1", "(1+2i)z^3 - 0.5", ...
  static std::vector<Complex> parse_polynomial(const std::string& text);

  Complex operator()(Point z) const { return phi_(z); }
  const Domain& domain() const { return domain_; }
  const std::vector<Point>& critical_points() const { return critical_; }
  const std::vector<Complex>& coefficients() const { return coeffs_; }
  /// max |phi| over boundary and interior samples.
  double max_abs() const { return max_abs_; }
  /// Radius of the critical balls in |phi|: 1e-8 max|phi| by default.
  double critical_epsilon() const { return 1e-8 * max_abs_; }

 private:
  void finish();

  std::function<Complex(Point)> phi_;
  Domain domain_;
  std::vector<Point> critical_;
  std::vector<Complex> coeffs_;
  double max_abs_ = 0.0;
};

enum class TrajectoryKind { Vertical, Horizontal };
enum class Termination { Boundary, CriticalPoint, StepLimit };

std::string to_string(TrajectoryKind k);
std::string to_string(Termination t);

struct Trajectory {
  TrajectoryKind kind = TrajectoryKind::Vertical;
  std::vector<Point> points;  // from the backward end to the forward end
  std::array<Termination, 2> termination{Termination::StepLimit, Termination::StepLimit};
  std::array<bool, 2> tangential_exit{false, false};
  int start_index = 0;
  double phi_length = 0.0;
};

/// RK4 in |phi|^(1/2)-arclength along dz/ds = c / sqrt(phi), c = i (vertical)
/// or 1 (horizontal), with the square root continued along the curve.
/// Throws ConfigError for a critical start and NumericalError on a branch flip.
Trajectory trace(const QuadraticDifferential& qd, Point start, TrajectoryKind kind, double step,
                 int max_steps = 4'000'000);

/// int |phi|^(1/2) |dz| by composite two-point Gauss-Legendre on each segment.
double phi_length(const QuadraticDifferential& qd, const std::vector<Point>& curve);
/// int |phi|^(1/2) F |dz|, same rule.
double weighted_length(const QuadraticDifferential& qd, const std::vector<Point>& curve,
                       const std::function<double(Point)>& F);

/// zeta(z_k) - zeta(z_0) = int sqrt(phi) dz along the polyline, root continued
/// from the principal branch at z_0 (three-point Gauss-Legendre per segment).
std::vector<Complex> natural_parameter(const QuadraticDifferential& qd, const std::vector<Point>& curve);

struct MinimalityRecord {
  double traj_length = 0.0;
  double min_competitor = 0.0;
  double margin = 0.0;
  int competitors = 0;
  int discarded = 0;
  bool degenerate = false;  // endpoints coincide
};

/// Compares the trajectory's length with random sine-bump perturbations of
/// the chord between its endpoints; competitors leaving the domain are redrawn.
MinimalityRecord minimality_check(const QuadraticDifferential& qd, const Trajectory& traj, int competitors,
                                  std::uint64_t seed);

/// Vertical trajectories seeded on the segment a-b (a horizontal arc) at
/// uniform spacing in Re zeta.
struct TrajectoryFamily {
  Point a, b;
  double spacing = 1e-2;
  double step = 1e-3;        // trace step
  double quad_edge = 0.02;   // mesh size for the domain quadrature
};

struct LineComparison {
  Point seed;
  double line_F = 0.0;
  double line_G = 0.0;
  bool holds = false;  // line_F <= line_G
};

struct FubiniRecord {
  std::vector<LineComparison> lines;
  double spacing = 0.0;        // effective spacing in Re zeta
  double domain_lhs = 0.0;     // int |phi| F by triangle quadrature
  double domain_rhs = 0.0;     // int |phi| G
  double lines_lhs = 0.0;      // sum spacing * line_F
  double lines_rhs = 0.0;
  double coverage_error = 0.0; // max |lines - domain|
  bool all_lines_hold = false;
  bool implication_holds = false;
};

FubiniRecord fubini_check(const QuadraticDifferential& qd, const std::function<double(Point)>& F,
                          const std::function<double(Point)>& G, const TrajectoryFamily& family);

}  // namespace hopfmin
