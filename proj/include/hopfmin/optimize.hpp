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

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hopfmin/energy.hpp"
#include "hopfmin/hopf.hpp"
#include "hopfmin/mapping.hpp"

namespace hopfmin {

struct SolveOptions {
  int max_iterations = 5000;
  /// Convergence threshold on the preconditioned gradient norm; a negative
  /// value selects 1e-8 * energy / diameter of the target.
  double tol_grad = -1.0;
  /// Each image triangle keeps at least this fraction of its area per step.
  double area_floor = 0.1;
  double armijo = 1e-4;
  bool parallel = true;
};

/// Boundary-value problem for a map source -> target.
///  - mean_distortion(p): minimized in the inverse variable h: target -> source
///    via the inverse energy, and reported as f = h^-1;
///  - inverse_energy(p), weighted_dirichlet(Phi): minimized directly.
struct Problem {
  Domain source;
  Domain target;
  BoundaryMap boundary;  // source boundary -> target boundary
  Functional functional = Functional::MeanDistortion;
  double p = 2.0;
  std::optional<WeightFn> phi;
  double mesh_edge = 0.1;
  SolveOptions options;
  std::uint64_t seed = 0;
};

struct SolveReport {
  DiscreteMap map;                      // the optimized variable
  std::optional<DiscreteMap> forward;   // f = map^-1 for mean-distortion problems
  std::vector<std::pair<int, double>> energy_trace;
  double energy = 0.0;
  double grad_norm = 0.0;
  double tol_grad = 0.0;
  double hopf_residual = 0.0;       // max normalized loop residual
  double hopf_residual_mean = 0.0;  // area-weighted mean
  double min_J = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string message;
};

/// Preconditioned gradient descent with Armijo backtracking and a step cap
/// from the area floor. Boundary vertices never move. `diameter` scales the
/// default tolerance.
SolveReport minimize(const Objective& objective, const DiscreteMap& init, const SolveOptions& options,
                     double diameter);

/// The mesh the problem's variable lives on and its boundary values.
struct Discretization {
  MeshPtr mesh;
  std::vector<Point> boundary;  // per mesh.boundary_loop entry
  Domain codomain;
};
Discretization discretize(const Problem& problem);
Objective make_objective(const Problem& problem, const Discretization& disc);

/// Harmonic extension if injective, otherwise the Tutte embedding; throws
/// NumericalError when neither is injective.
DiscreteMap default_init(const Discretization& disc);
/// default_init plus t * (torsion-weighted random smooth displacement), with
/// t halved until the map is injective.
DiscreteMap random_injective_init(const Discretization& disc, std::mt19937_64& rng);

SolveReport solve(const Problem& problem);
SolveReport solve(const Problem& problem, const DiscreteMap& init);

struct UniquenessReport {
  std::vector<SolveReport> reports;
  std::vector<std::vector<double>> pairwise_linf;
  double max_pairwise = 0.0;
  bool all_converged = false;
  /// Mean Hopf residual each run must stay below (2 * longest mesh edge).
  double residual_threshold = 0.0;
  bool inconclusive = true;  // some run failed the gradient or residual test
};

UniquenessReport uniqueness_experiment(const Problem& problem, int n_starts, std::uint64_t seed);

struct EquivalenceReport {
  double energy = 0.0;
  double hopf_residual = 0.0;
  double hopf_residual_mean = 0.0;
  std::vector<double> competitor_gaps;  // E(competitor) - E(h); the last is one descent step
  bool is_min_cert = false;             // every gap >= -1e-9 E(h)
};

EquivalenceReport equivalence_check(const DiscreteMap& h, const WeightFn& phi, int competitors,
                                    std::uint64_t seed);

/// The L-shaped target with corners (0,0),(2,0),(2,1),(1,1),(1,2),(0,2).
Domain l_shape();
/// Disk -> L boundary map: the arcs s in [0.05,0.45] and [0.5,0.9] of the
/// circle are squeezed onto short pieces of the boundary around the convex
/// corners (2,1) and (1,2), so the harmonic extension pulls the centre of
/// the disk into the notch.
BoundaryMap choquet_boundary_map(const Domain& disk, const Domain& L, int samples = 400);

struct ChoquetReport {
  DiscreteMap harmonic;            // harmonic extension on the disk mesh
  std::vector<int> exterior;       // vertices mapped outside L
  double max_exterior_margin = 0.0;
  Point worst_image;
  SolveReport minimizer;           // p = 2, inverse variable on the L mesh
  double min_J_forward = 0.0;
};

ChoquetReport choquet_experiment(double mesh_edge, const SolveOptions& options, int disk_sides = 128);

}  // namespace hopfmin
