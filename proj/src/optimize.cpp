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

#include "hopfmin/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hopfmin/laplacian.hpp"

namespace hopfmin {

namespace {

double real_dot(std::span<const Complex> a, std::span<const Complex> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  return s;
}

// Largest alpha in (0, cap] keeping every image triangle's area >= floor * current area.
double area_step_cap(const TriangleMesh& ref, std::span<const Point> x, std::span<const Complex> d, double floor,
                     double cap) {
  double amax = cap;
  for (const Tri& t : ref.triangles) {
    const Point p0 = x[t[0]], e1 = x[t[1]] - p0, e2 = x[t[2]] - p0;
    const Complex d0 = d[t[0]], f1 = d[t[1]] - d0, f2 = d[t[2]] - d0;
    // 2 area(alpha) = A0 + alpha B + alpha^2 C
    const double A0 = cross(e1, e2);
    const double B = cross(e1, f2) + cross(f1, e2);
    const double C = cross(f1, f2);
    const double c0 = (1.0 - floor) * A0;  // solve C a^2 + B a + c0 = 0
    double root = std::numeric_limits<double>::infinity();
    if (std::abs(C) < 1e-300) {
      if (B < 0) root = c0 / -B;
    } else {
      const double disc = B * B - 4.0 * C * c0;
      if (disc >= 0) {
        const double sq = std::sqrt(disc);
        // Stable roots.
        const double q = -0.5 * (B + (B >= 0 ? sq : -sq));
        for (double r : {q / C, c0 / q})
          if (r > 0 && std::isfinite(r)) root = std::min(root, r);
      }
    }
    amax = std::min(amax, root);
  }
  return amax;
}

double diameter_of(std::span<const Point> pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, std::abs(pts[i] - pts[j]));
  return d;
}

bool injective(const DiscreteMap& m) { return min_jacobian(derivatives(m)) > 0; }

}  // namespace

SolveReport minimize(const Objective& obj, const DiscreteMap& init, const SolveOptions& opt, double diameter) {
  const TriangleMesh& ref = *obj.reference();
  if (init.reference->num_vertices() != ref.num_vertices())
    throw ConfigError("minimize: initial map lives on a different mesh");
  SolveReport rep;
  rep.map = DiscreteMap{obj.reference(), init.targets};
  std::vector<Point>& x = rep.map.targets;
  const auto bmask = ref.boundary_mask();
  std::vector<Complex> g, gtrial;
  std::vector<double> e, etrial, diff;
  double E = obj.value_and_gradient(x, g, e);
  if (!std::isfinite(E)) throw NumericalError("minimize: initial map is not a discrete diffeomorphism");
  rep.energy_trace.emplace_back(0, E);
  double alpha_prev = 1.0;
  std::vector<Point> trial(x.size());
  int it = 0;
  for (;; ++it) {
    for (std::size_t v = 0; v < g.size(); ++v)
      if (bmask[v]) g[v] = 0.0;
    const auto w = obj.metric_weights(x);
    const DirichletSolver solver(ref, stiffness(ref, w));
    const auto s = solver.solve_interior(g);  // M^-1 g
    rep.grad_norm = std::sqrt(real_dot(g, g));
    rep.tol_grad = opt.tol_grad >= 0 ? opt.tol_grad : 1e-8 * E / diameter;
    if (rep.grad_norm <= rep.tol_grad) {
      rep.converged = true;
      rep.message = "gradient tolerance reached";
      break;
    }
    if (it >= opt.max_iterations) {
      rep.message = "iteration limit";
      break;
    }
    std::vector<Complex> d(s.size());
    for (std::size_t v = 0; v < s.size(); ++v) d[v] = -s[v];
    const double slope = -real_dot(g, s);
    double alpha = area_step_cap(ref, x, d, opt.area_floor, std::min(1e6, 2.0 * alpha_prev));
    bool accepted = false;
    double Et = E;
    for (int bt = 0; bt < 80; ++bt) {
      for (std::size_t v = 0; v < x.size(); ++v) trial[v] = x[v] + alpha * d[v];
      Et = obj.value_and_gradient(trial, gtrial, etrial);
      if (std::isfinite(Et)) {
        // Sum the per-triangle changes; the totals agree to within an ulp near the optimum.
        diff.resize(e.size());
        for (std::size_t t = 0; t < e.size(); ++t) diff[t] = etrial[t] - e[t];
        const double dE = kernels::ordered_sum(diff);
        if (Et <= E && dE < 0 && dE <= opt.armijo * alpha * slope) {
          accepted = true;
          break;
        }
        // Below the energy's round-off, judge the decrease by the trapezoid rule on
        // the directional derivatives, which stay accurate. The recomputed total may
        // then move by a few ulps either way.
        if (std::abs(dE) <= 1e-14 * E) {
          double s1 = 0.0;
          for (std::size_t v = 0; v < d.size(); ++v)
            if (!bmask[v]) s1 += gtrial[v].real() * d[v].real() + gtrial[v].imag() * d[v].imag();
          const double model = 0.5 * alpha * (slope + s1);
          if (model < 0 && model <= opt.armijo * alpha * slope) {
            accepted = true;
            break;
          }
        }
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      rep.message = "line search stalled";
      break;
    }
    x.swap(trial);
    g.swap(gtrial);
    e.swap(etrial);
    E = Et;
    alpha_prev = alpha;
    rep.energy_trace.emplace_back(it + 1, E);
  }
  rep.iterations = it;
  rep.energy = E;
  rep.min_J = min_jacobian(derivatives(rep.map));
  HopfField field;
  if (obj.kind() == Functional::WeightedDirichlet)
    field = hopf_differential(rep.map, *obj.phi());
  else
    field = inner_variational_field(rep.map, obj.p());
  try {
    const auto res = holomorphy_residual(field);
    rep.hopf_residual = res.max_rel;
    rep.hopf_residual_mean = res.mean_rel;
  } catch (const NumericalError&) {
    rep.hopf_residual = rep.hopf_residual_mean = 0.0;
  }
  return rep;
}

Discretization discretize(const Problem& pr) {
  Discretization d;
  if (pr.functional == Functional::MeanDistortion) {
    if (!(pr.p > 1.0)) throw ConfigError("problem: p must be > 1 for mean-distortion problems");
    auto mesh = std::make_shared<TriangleMesh>(triangulate(pr.target, pr.mesh_edge));
    const BoundaryMap inv = invert_boundary_map(pr.boundary, pr.source, pr.target);
    d.boundary = boundary_targets(*mesh, inv, pr.source);
    d.mesh = std::move(mesh);
    d.codomain = pr.source;
  } else {
    if (pr.functional == Functional::InverseEnergy && !(pr.p >= 1.0)) throw ConfigError("problem: p must be >= 1");
    auto mesh = std::make_shared<TriangleMesh>(triangulate(pr.source, pr.mesh_edge));
    d.boundary = boundary_targets(*mesh, pr.boundary, pr.target);
    d.mesh = std::move(mesh);
    d.codomain = pr.target;
  }
  return d;
}

Objective make_objective(const Problem& pr, const Discretization& d) {
  switch (pr.functional) {
    case Functional::MeanDistortion:
    case Functional::InverseEnergy:
      return Objective(d.mesh, Functional::InverseEnergy, pr.p, std::nullopt, pr.options.parallel);
    case Functional::WeightedDirichlet:
      if (!pr.phi) throw ConfigError("problem: weighted_dirichlet needs phi");
      return Objective(d.mesh, Functional::WeightedDirichlet, 0.0, pr.phi, pr.options.parallel);
  }
  throw ConfigError("problem: unknown functional");
}

DiscreteMap default_init(const Discretization& d) {
  auto h = harmonic_extension(d.mesh, d.boundary);
  if (injective(h)) return h;
  auto t = tutte_embedding(d.mesh, d.boundary);
  if (injective(t)) return t;
  throw NumericalError("no injective initialization: harmonic and Tutte extensions both fold");
}

DiscreteMap random_injective_init(const Discretization& d, std::mt19937_64& rng) {
  const DiscreteMap base = default_init(d);
  const TriangleMesh& M = *d.mesh;
  const auto u = torsion(M);
  const double umax = *std::max_element(u.begin(), u.end());
  const double scale = 0.5 * d.codomain.diameter();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  // A few random plane waves in the source coordinates.
  constexpr int kWaves = 4;
  const double L = M.max_edge() > 0 ? std::sqrt(M.total_area()) : 1.0;
  std::array<Complex, kWaves> k, amp;
  std::array<double, kWaves> phase;
  for (int j = 0; j < kWaves; ++j) {
    k[j] = std::polar((1.0 + 2.0 * unit(rng)) * std::numbers::pi / L, 2.0 * std::numbers::pi * unit(rng));
    amp[j] = Complex(normal(rng), normal(rng)) / std::sqrt(static_cast<double>(kWaves));
    phase[j] = 2.0 * std::numbers::pi * unit(rng);
  }
  std::vector<Complex> disp(M.num_vertices());
  for (int v = 0; v < M.num_vertices(); ++v) {
    Complex s = 0.0;
    for (int j = 0; j < kWaves; ++j) s += amp[j] * std::sin(dot(k[j], M.vertices[v]) + phase[j]);
    disp[v] = scale * (u[v] / umax) * s;
  }
  DiscreteMap m = base;
  double t = 1.0;
  for (int tries = 0; tries < 60; ++tries, t *= 0.5) {
    for (int v = 0; v < M.num_vertices(); ++v) m.targets[v] = base.targets[v] + t * disp[v];
    if (injective(m)) return m;
  }
  return base;
}

SolveReport solve(const Problem& pr, const DiscreteMap& init) {
  const auto d = discretize(pr);
  const auto obj = make_objective(pr, d);
  DiscreteMap start{d.mesh, init.targets};
  if (start.targets.size() != d.mesh->vertices.size()) throw ConfigError("solve: initial map has the wrong size");
  auto rep = minimize(obj, start, pr.options, d.codomain.diameter());
  if (pr.functional == Functional::MeanDistortion && rep.min_J > 0) rep.forward = invert(rep.map);
  return rep;
}

SolveReport solve(const Problem& pr) {
  const auto d = discretize(pr);
  const auto obj = make_objective(pr, d);
  auto rep = minimize(obj, default_init(d), pr.options, d.codomain.diameter());
  if (pr.functional == Functional::MeanDistortion && rep.min_J > 0) rep.forward = invert(rep.map);
  return rep;
}

UniquenessReport uniqueness_experiment(const Problem& pr, int n_starts, std::uint64_t seed) {
  if (n_starts < 2) throw ConfigError("uniqueness_experiment: need at least two starts");
  const auto d = discretize(pr);
  const auto obj = make_objective(pr, d);
  UniquenessReport u;
  for (int r = 0; r < n_starts; ++r) {
    std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(ss);
    const auto init = random_injective_init(d, rng);
    auto rep = minimize(obj, init, pr.options, d.codomain.diameter());
    if (pr.functional == Functional::MeanDistortion && rep.min_J > 0) rep.forward = invert(rep.map);
    u.reports.push_back(std::move(rep));
  }
  u.pairwise_linf.assign(n_starts, std::vector<double>(n_starts, 0.0));
  for (int i = 0; i < n_starts; ++i)
    for (int j = i + 1; j < n_starts; ++j) {
      const double v = max_vertex_distance(u.reports[i].map, u.reports[j].map);
      u.pairwise_linf[i][j] = u.pairwise_linf[j][i] = v;
      u.max_pairwise = std::max(u.max_pairwise, v);
    }
  u.all_converged = std::all_of(u.reports.begin(), u.reports.end(), [](const auto& r) { return r.converged; });
  u.residual_threshold = 2.0 * d.mesh->max_edge();
  u.inconclusive = !u.all_converged || std::any_of(u.reports.begin(), u.reports.end(), [&](const auto& r) {
    return !(r.hopf_residual_mean <= u.residual_threshold);
  });
  return u;
}

EquivalenceReport equivalence_check(const DiscreteMap& h, const WeightFn& phi, int competitors, std::uint64_t seed) {
  if (!injective(h)) throw ConfigError("equivalence_check: h is not a discrete diffeomorphism");
  EquivalenceReport r;
  r.energy = weighted_dirichlet(h, phi).total;
  const auto res = holomorphy_residual(hopf_differential(h, phi));
  r.hopf_residual = res.max_rel;
  r.hopf_residual_mean = res.mean_rel;
  std::vector<Point> bpts;
  for (int v : h.reference->boundary_loop) bpts.push_back(h.targets[v]);
  Discretization d{h.reference, bpts, make_polygon(bpts)};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int c = 0; c < competitors; ++c) {
    // Perturb h itself, not its harmonic extension.
    Discretization dd = d;
    const auto pert = random_injective_init(dd, rng);
    const auto base = default_init(dd);
    DiscreteMap comp = h;
    const double t0 = 0.2 * unit(rng);
    for (double t = t0; t > 1e-12; t *= 0.5) {
      for (int v = 0; v < h.reference->num_vertices(); ++v) comp.targets[v] = h.targets[v] + t * (pert.targets[v] - base.targets[v]);
      if (injective(comp)) break;
    }
    if (!injective(comp)) continue;
    r.competitor_gaps.push_back(weighted_dirichlet(comp, phi).total - r.energy);
  }
  if (phi.is_smooth()) {
    SolveOptions one;
    one.max_iterations = 1;
    one.tol_grad = 0.0;
    const Objective obj(h.reference, Functional::WeightedDirichlet, 0.0, phi);
    const auto step = minimize(obj, h, one, diameter_of(bpts));
    r.competitor_gaps.push_back(weighted_dirichlet(step.map, phi).total - r.energy);
  }
  r.is_min_cert = std::all_of(r.competitor_gaps.begin(), r.competitor_gaps.end(),
                              [&](double g) { return g >= -1e-9 * r.energy; });
  return r;
}

Domain l_shape() { return make_polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}); }

BoundaryMap choquet_boundary_map(const Domain& disk, const Domain& L, int samples) {
  (void)disk;
  // Piecewise-linear s -> arclength on L (perimeter 8).
  static const double S[] = {0.0, 0.05, 0.45, 0.5, 0.9, 1.0};
  static const double T[] = {0.0, 2.9, 3.1, 4.9, 5.1, 8.0};
  const double per = L.perimeter();
  return sample_boundary_map(L, samples, [&](double s) {
    int k = 0;
    while (k < 4 && s > S[k + 1]) ++k;
    const double t = T[k] + (T[k + 1] - T[k]) * (s - S[k]) / (S[k + 1] - S[k]);
    return t / per;
  });
}

ChoquetReport choquet_experiment(double mesh_edge, const SolveOptions& options, int disk_sides) {
  const Domain disk = make_disk_polygon(disk_sides, 1.0);
  const Domain L = l_shape();
  const BoundaryMap g = choquet_boundary_map(disk, L);
  ChoquetReport r;
  auto dmesh = std::make_shared<TriangleMesh>(triangulate(disk, mesh_edge));
  r.harmonic = harmonic_extension(dmesh, g, L);
  const auto Lpoly = L.vertices;
  for (int v = 0; v < dmesh->num_vertices(); ++v) {
    const Point w = r.harmonic.targets[v];
    if (winding_number(Lpoly, w) == 0) {
      const double m = L.boundary_distance(w);
      r.exterior.push_back(v);
      if (m > r.max_exterior_margin) r.max_exterior_margin = m, r.worst_image = w;
    }
  }
  Problem pr;
  pr.source = disk;
  pr.target = L;
  pr.boundary = g;
  pr.functional = Functional::MeanDistortion;
  pr.p = 2.0;
  pr.mesh_edge = mesh_edge;
  pr.options = options;
  r.minimizer = solve(pr);
  if (r.minimizer.forward) r.min_J_forward = min_jacobian(derivatives(*r.minimizer.forward));
  return r;
}

}  // namespace hopfmin
