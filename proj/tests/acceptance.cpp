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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hopfmin/energy.hpp"
#include "hopfmin/hopf.hpp"
#include "hopfmin/laplacian.hpp"
#include "hopfmin/optimize.hpp"
#include "hopfmin/quaddiff.hpp"
#include "hopfmin/smooth_map.hpp"
#include "oracles.hpp"

using namespace hopfmin;

namespace {

constexpr double kPi = std::numbers::pi;

struct Result {
  bool pass = true;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

MeshPtr mesh_of(const Domain& d, double h) { return std::make_shared<TriangleMesh>(triangulate(d, h)); }

DiscreteMap sample(MeshPtr m, const std::function<Point(Point)>& fn) { return DiscreteMap::sample(std::move(m), fn); }

Problem disk_problem(double p, double edge, int sides = 64, double a1 = 0.06, double a2 = 0.02) {
  const Domain d = make_disk_polygon(sides, 1.0);
  Problem pr;
  pr.source = d;
  pr.target = d;
  pr.boundary = sample_boundary_map(d, 400, [a1, a2](double s) {
    return s + a1 * std::sin(2 * kPi * s) + a2 * std::sin(4 * kPi * s);
  });
  pr.functional = Functional::MeanDistortion;
  pr.p = p;
  pr.mesh_edge = edge;
  return pr;
}

// 1. K of affine maps.
Result distortion_algebra() {
  std::mt19937_64 rng(101);
  const auto m = mesh_of(make_rectangle(1, 1), 0.25);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const AffineMap A = random_affine(rng, 0.95);
    const double a2 = std::norm(A.a), b2 = std::norm(A.b), K = (a2 + b2) / (a2 - b2);
    for (const auto& d : derivatives(sample(m, A))) worst = std::max(worst, std::abs(d.K - K));
  }
  return {worst <= 1e-12, "20 maps, max |K - K_exact| = " + sci(worst)};
}

// 2. Mean distortion of f against the inverse energy of the sampled inverse.
Result duality() {
  const Domain D = make_disk_polygon(64, 1.0);
  const auto coarse = mesh_of(D, 0.05), fine = mesh_of(D, 0.025);
  double worst = 0.0, worst_ratio = 1e300;
  for (int seed = 1; seed <= 10; ++seed) {
    std::mt19937_64 rng(seed);
    const auto s = random_smooth_map(rng, D, 4, 0.5, {}, 0.15);
    for (double p : {1.5, 2.0, 3.0}) {
      double rel[2];
      int i = 0;
      for (const auto& m : {coarse, fine}) {
        const double E = mean_distortion(sample(m, s), p).total;
        const double Ei = inverse_energy(sample(m, [&](Point w) { return s.inverse(w); }), p).total;
        rel[i++] = std::abs(E - Ei) / E;
      }
      worst = std::max(worst, rel[0]);
      worst_ratio = std::min(worst_ratio, rel[0] / rel[1]);
    }
  }
  return {worst <= 5e-3 && worst_ratio >= 3.0,
          "max rel gap at 0.05 = " + sci(worst) + " (<= 5e-3), min halving ratio = " + sci(worst_ratio) + " (>= 3)"};
}

// 3. The comparison identity: exact for affine pairs, O(h^2) for smooth pairs.
Result integral_identity_check() {
  const auto one = WeightFn::constant(1.0);
  std::mt19937_64 rng(303);
  const Domain X = make_rectangle(1, 1);
  const auto mx = mesh_of(X, 0.1);
  double affine_gap = 0.0;
  for (int k = 0; k < 10; ++k) {
    const AffineMap A = random_affine(rng, 0.6), B = random_affine(rng, 0.6);
    // H's domain must cover f(X) = B^-1 A (X).
    const AffineMap f = B.inverse().after(A);
    double r = 0.0;
    for (Point c : X.vertices) r = std::max(r, std::abs(f(c)));
    const Domain big = make_rectangle(2 * r + 1, 2 * r + 1, {-r - 0.5, -r - 0.5});
    const auto H = sample(mesh_of(big, (2 * r + 1) / 12), B);
    affine_gap = std::max(affine_gap, integral_identity(sample(mx, A), H, one).gap);
  }

  const Domain D = make_disk_polygon(64, 1.0);
  const std::vector<double> edges{0.05, 0.025, 0.0125, 0.00625};
  std::vector<MeshPtr> meshes;
  for (double e : edges) meshes.push_back(mesh_of(D, e));
  double worst = 0.0, worst_slope = 1e300;
  bool monotone = true;
  for (int seed = 1; seed <= 10; ++seed) {
    std::mt19937_64 r2(seed);
    const auto A = random_affine(r2, 0.5);
    const auto S = random_smooth_map(r2, D, 3, 0.1, A, 0.15);
    const auto psi = random_smooth_map(r2, D, 3, 0.8, {}, 0.15);
    std::vector<double> rel;
    for (const auto& m : meshes) {
      const auto rec = integral_identity(sample(m, [&](Point z) { return S(psi(z)); }), sample(m, S), one);
      rel.push_back(rec.gap / std::abs(rec.lhs));
    }
    worst = std::max(worst, rel[0]);
    for (std::size_t i = 1; i < rel.size(); ++i) monotone = monotone && rel[i] < rel[i - 1];
    // least-squares slope of log(rel) against log(edge)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(rel.size());
    for (std::size_t i = 0; i < rel.size(); ++i) {
      const double x = std::log(edges[i]), y = std::log(rel[i]);
      sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    worst_slope = std::min(worst_slope, (n * sxy - sx * sy) / (n * sxx - sx * sx));
  }
  return {affine_gap <= 1e-10 && worst <= 5e-3 && monotone && worst_slope >= 1.7,
          "affine max gap = " + sci(affine_gap) + " (<= 1e-10); smooth rel gap at 0.05 = " + sci(worst) +
              " (<= 5e-3), decreasing: " + (monotone ? "yes" : "no") + ", min fitted order = " + sci(worst_slope) +
              " (>= 1.7)"};
}

// 4. Hoelder comparison.
Result holder() {
  const Domain D = make_disk_polygon(64, 1.0);
  const auto m = mesh_of(D, 0.15);
  std::mt19937_64 rng(404);
  int violations = 0;
  double worst = 1e300, eq = 0.0;
  for (int k = 0; k < 100; ++k) {
    const AffineMap a = random_affine(rng, 0.5);
    const auto f = sample(m, random_smooth_map(rng, D, 3, 0.5, a));
    const auto f2 = sample(m, random_smooth_map(rng, D, 3, 0.5, a));
    const auto g = invert(f2);
    for (double p : {1.5, 2.0, 3.0}) {
      const auto r = holder_check(f, g, p);
      worst = std::min(worst, r.gap / r.rhs);
      if (r.gap < -1e-9 * r.rhs) ++violations;
      if (k < 10) {
        const auto e = holder_check(f, invert(f), p);
        eq = std::max(eq, std::abs(e.gap) / e.rhs);
      }
    }
  }
  return {violations == 0 && eq <= 1e-6, std::to_string(violations) + " violations in 300 (min gap/rhs = " +
                                              sci(worst) + "), equality case rel gap = " + sci(eq) + " (<= 1e-6)"};
}

// 5. Horizontal/vertical derivative identities.
Result hopf_identities() {
  const Domain D = make_disk_polygon(64, 1.0);
  const auto m = mesh_of(D, 0.08);
  std::mt19937_64 rng(505);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const auto s = random_smooth_map(rng, D, 5, 0.7, random_affine(rng, 0.8));
    const auto h = sample(m, s);
    worst = std::max(worst, hv_derivatives(hopf_differential(h, WeightFn::constant(1.0))).max());
    worst = std::max(worst, hv_derivatives(hopf_differential(h, WeightFn::parse("quad:1,2"))).max());
    worst = std::max(worst, hv_derivatives(inner_variational_field(h, 2.5)).max());
  }
  return {worst <= 1e-12, "10 maps x 3 weights, max residual = " + sci(worst)};
}

// 6. Loop residual of the inner-variational field under refinement.
Result inner_variational() {
  std::vector<double> res;
  bool converged = true;
  for (double e : {0.2, 0.1, 0.05, 0.025}) {
    const auto r = solve(disk_problem(2.0, e, 128));
    converged = converged && r.converged;
    res.push_back(r.hopf_residual_mean);
  }
  double min_ratio = 1e300;
  for (std::size_t i = 1; i < res.size(); ++i) min_ratio = std::min(min_ratio, res[i - 1] / res[i]);
  std::string d = "mean residual";
  for (double r : res) d += " " + sci(r);
  return {converged && min_ratio >= 1.5, d + ", min ratio = " + sci(min_ratio) + " (>= 1.5)"};
}

// 7. Multi-start uniqueness.
Result uniqueness() {
  Problem sq;
  sq.source = make_rectangle(1, 1, {-0.5, -0.5});
  sq.target = make_disk_polygon(64, 1.0);
  sq.boundary = sample_boundary_map(sq.target, 400, [](double s) { return s + 0.125; });
  sq.functional = Functional::MeanDistortion;
  sq.mesh_edge = 0.1;
  double worst = 0.0;
  bool ok = true;
  for (double p : {1.5, 2.0, 3.0}) {
    auto disk = disk_problem(p, 0.1);
    sq.p = p;
    for (const Problem* pr : {&disk, &sq}) {
      const auto u = uniqueness_experiment(*pr, 5, 77);
      ok = ok && u.all_converged && !u.inconclusive;
      worst = std::max(worst, u.max_pairwise);
    }
  }
  return {ok && worst <= 1e-4, std::string("disk and square sources, p = 1.5/2/3, all converged: ") +
                                   (ok ? "yes" : "no") + ", max pairwise Linf = " + sci(worst) + " (<= 1e-4)"};
}

// 8. Phi = 1 descent against the cotangent linear solve.
Result harmonic_equivalence() {
  auto pr = disk_problem(0.0, 0.1);
  pr.functional = Functional::WeightedDirichlet;
  pr.phi = WeightFn::constant(1.0);
  const auto d = discretize(pr);
  std::mt19937_64 rng(808);
  const auto r = solve(pr, random_injective_init(d, rng));
  const double dist = max_vertex_distance(r.map, harmonic_extension(d.mesh, d.boundary));
  return {r.converged && dist <= 1e-6, "Linf to linear solve = " + sci(dist) + " (<= 1e-6)"};
}

// 9. Harmonic extension leaves the L-shape, the p = 2 minimizer does not fold.
Result choquet() {
  const auto c = choquet_experiment(0.1, SolveOptions{});
  const bool ok = !c.exterior.empty() && c.max_exterior_margin >= 1e-3 && c.minimizer.converged && c.min_J_forward > 0;
  return {ok, std::to_string(c.exterior.size()) + " exterior vertices, margin = " + sci(c.max_exterior_margin) +
                  " (>= 1e-3), minimizer min_J = " + sci(c.min_J_forward) + " (> 0)"};
}

// 10. Trajectories, minimality, Fubini surrogate.
Result trajectories() {
  const Domain disk2 = make_disk_polygon(256, 2.0);
  const auto qz = QuadraticDifferential::polynomial({0.0, 1.0}, disk2);
  const auto t = trace(qz, {1.0, 0.0}, TrajectoryKind::Vertical, 1e-3);
  const double haus = oracle::hausdorff_to_nat_curve(t.points, disk2);
  double min_ratio = 1e300, prev = 0.0;
  for (double step : {0.08, 0.04, 0.02}) {
    const double dev = oracle::vertex_deviation(trace(qz, {1.0, 0.0}, TrajectoryKind::Vertical, step).points);
    if (prev > 0) min_ratio = std::min(min_ratio, prev / dev);
    prev = dev;
  }

  const Domain sq = make_rectangle(1, 1);
  const auto q1 = QuadraticDifferential::polynomial({1.0}, sq);
  const double margin =
      std::min(minimality_check(q1, trace(q1, {0.5, 0.5}, TrajectoryKind::Vertical, 0.05), 200, 7).margin,
               minimality_check(qz, t, 200, 11).margin);

  TrajectoryFamily fam{{0.0, 0.5}, {1.0, 0.5}, 0.1, 0.05, 0.1};
  const auto a = fubini_check(q1, [](Point) { return 1.0; }, [](Point) { return 1.0; }, fam);
  const auto b = fubini_check(q1, [](Point z) { return z.real(); }, [](Point) { return 1.0; }, fam);
  const double exact = std::max({std::abs(a.domain_lhs - 1.0), std::abs(a.lines_lhs - 1.0),
                                 std::abs(b.domain_lhs - 0.5), std::abs(b.lines_lhs - 0.5)});
  const auto qs = QuadraticDifferential::polynomial({0.0, 1.0}, make_disk_polygon(256, 0.5, {1.0, 0.0}));
  const auto s = fubini_check(
      qs, [](Point z) { return 0.25 * std::norm(z); }, [](Point z) { return 1.0 + 0.1 * z.imag() * z.imag(); },
      TrajectoryFamily{{0.5, 0.0}, {1.5, 0.0}, 1e-2, 1e-3, 0.02});

  const bool ok = haus <= 1e-4 && min_ratio >= 8 && margin >= -1e-9 && exact <= 1e-12 && s.coverage_error <= 1e-3 &&
                  s.implication_holds;
  return {ok, "Hausdorff = " + sci(haus) + " (<= 1e-4), halving ratio = " + sci(min_ratio) +
                  " (>= 8), minimality margin = " + sci(margin) + " (>= -1e-9), Fubini exact = " + sci(exact) +
                  " (<= 1e-12), sector = " + sci(s.coverage_error) + " (<= 1e-3)"};
}

// 11. Analytic gradients against central differences.
Result gradients() {
  std::mt19937_64 rng(1111);
  const Domain D = make_disk_polygon(64, 1.0);
  const auto m = mesh_of(D, 0.2);
  auto f = sample(m, random_smooth_map(rng, D, 4, 0.6, {Complex(1, 0.3), Complex(0.3, 0.1), 0.2}));
  std::uniform_real_distribution<double> jit(-0.02, 0.02);
  const auto bm = m->boundary_mask();
  std::vector<int> interior;
  for (int v = 0; v < m->num_vertices(); ++v)
    if (!bm[v]) {
      f.targets[v] += Complex(jit(rng), jit(rng));
      interior.push_back(v);
    }
  if (!(min_jacobian(derivatives(f)) > 0)) return {false, "jittered map folds"};
  const std::vector<Objective> objs{Objective(m, Functional::MeanDistortion, 2.5),
                                    Objective(m, Functional::InverseEnergy, 1.7),
                                    Objective(m, Functional::WeightedDirichlet, 0, WeightFn::parse("exp:0.4,-0.3"))};
  std::uniform_int_distribution<std::size_t> pick(0, interior.size() - 1);
  double worst = 0.0;
  for (const auto& obj : objs) {
    std::vector<Complex> g;
    obj.value_and_gradient(f.targets, g);
    for (int k = 0; k < 10; ++k) {
      const int v = interior[pick(rng)];
      auto x = f.targets;
      const double h = 1e-6;
      auto at = [&](Complex d) {
        x[v] = f.targets[v] + d;
        return obj.value(x);
      };
      const Complex fd((at(h) - at(-h)) / (2 * h), (at(Complex(0, h)) - at(Complex(0, -h))) / (2 * h));
      worst = std::max(worst, std::abs(fd - g[v]) / std::abs(g[v]));
    }
  }
  return {worst <= 1e-6, "3 functionals x 10 vertices, max rel error = " + sci(worst) + " (<= 1e-6)"};
}

// 12. Byte-identical CLI reports.
std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Result determinism() {
  const std::string cli = HOPFMIN_CLI, data = HOPFMIN_DATA, work = HOPFMIN_WORK;
  struct Run {
    std::string args;
    std::vector<std::string> files;
  };
  const std::vector<Run> runs{
      {"minimize --problem " + data + "/disk_p2.json --seed 7", {"report.json", "map.json", "energy_trace.csv"}},
      {"verify-identity --pair " + data + "/affine_pair.json", {"identity.json"}},
      {"trace --qd z --start 1,0 --kind vertical --step 1e-3", {"trajectory.json"}},
      {"uniqueness --problem " + data + "/disk_p2.json --starts 3 --seed 5", {"uniqueness.json", "pairwise.csv"}},
  };
  int compared = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::string out[2];
    for (int k = 0; k < 2; ++k) {
      out[k] = work + "/" + std::to_string(i) + (k ? "b" : "a");
      const std::string cmd = "\"" + cli + "\" " + runs[i].args + " --out \"" + out[k] + "\" > /dev/null";
      if (std::system(cmd.c_str()) != 0) return {false, "'" + runs[i].args + "' failed"};
    }
    for (const auto& f : runs[i].files) {
      const std::string a = slurp(out[0] + "/" + f), b = slurp(out[1] + "/" + f);
      if (a.empty() || a != b) return {false, f + " differs for '" + runs[i].args + "'"};
      ++compared;
    }
  }
  return {true, std::to_string(compared) + " reports identical across two runs"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Result (*)()>> criteria{
      {"distortion algebra", distortion_algebra},
      {"inverse-energy duality", duality},
      {"integral identity", integral_identity_check},
      {"Hoelder comparison", holder},
      {"Hopf identities", hopf_identities},
      {"inner-variational residual", inner_variational},
      {"uniqueness", uniqueness},
      {"harmonic equivalence", harmonic_equivalence},
      {"Choquet phenomenon", choquet},
      {"trajectories", trajectories},
      {"gradient check", gradients},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    if (!r.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", r.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, r.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
