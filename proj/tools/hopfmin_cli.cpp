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

// hopfmin command line: problems from JSON, reports to an output directory.
//
// Exit status: 0 all checks passed, 2 bad configuration, 3 numerical
// failure (non-convergence, singular data), 4 a property check exceeded its
// tolerance.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hopfmin/energy.hpp"
#include "hopfmin/hopf.hpp"
#include "hopfmin/io.hpp"
#include "hopfmin/optimize.hpp"
#include "hopfmin/quaddiff.hpp"
#include "hopfmin/svg.hpp"

namespace fs = std::filesystem;
using namespace hopfmin;
using io::json;

namespace {

enum Exit { kOk = 0, kConfig = 2, kNumerical = 3, kViolation = 4 };

struct Args {
  std::string problem, pair, qd = "z", start = "1,0", kind = "vertical", out = ".", map, domain;
  std::optional<double> p, tol_grad, mesh_edge;
  std::optional<std::uint64_t> seed;
  double step = 1e-3;
  int starts = 5;
  int competitors = 200;
};

// A check: value against tolerance, echoed into the report.
struct Checks {
  json list = json::array();
  bool ok = true;

  void upper(const std::string& name, double value, double tol) { add(name, value, tol, "<=", value <= tol); }
  void lower(const std::string& name, double value, double tol) { add(name, value, tol, ">=", value >= tol); }
  void flag(const std::string& name, bool pass) {
    list.push_back(json{{"name", name}, {"pass", pass}});
    ok = ok && pass;
  }

 private:
  void add(const std::string& name, double value, double tol, const char* rel, bool pass) {
    list.push_back(json{{"name", name}, {"value", value}, {"relation", rel}, {"tolerance", tol}, {"pass", pass}});
    ok = ok && pass;
  }
};

fs::path out_dir(const Args& a) {
  fs::path d(a.out);
  std::error_code ec;
  fs::create_directories(d, ec);
  if (ec) throw ConfigError("cannot create output directory '" + a.out + "'");
  return d;
}

void write_json(const fs::path& path, const json& j) { io::write_file(path.string(), io::dump(j)); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Point parse_point(const std::string& s) {
  double x = 0, y = 0;
  char comma = 0;
  std::istringstream is(s);
  if (!(is >> x >> comma >> y) || comma != ',' || !(is >> std::ws).eof())
    throw ConfigError("expected a point 'x,y', got '" + s + "'");
  return {x, y};
}

Problem load_problem(const Args& a) {
  if (a.problem.empty()) throw ConfigError("--problem is required");
  Problem pr = io::problem_from_json(io::read_file(a.problem));
  if (a.p) {
    if (!(*a.p > 1.0)) throw ConfigError("--p must be > 1");
    pr.p = *a.p;
  }
  if (a.tol_grad) {
    if (!(*a.tol_grad > 0)) throw ConfigError("--tol-grad must be positive");
    pr.options.tol_grad = *a.tol_grad;
  }
  if (a.mesh_edge) {
    if (!(*a.mesh_edge > 0)) throw ConfigError("--mesh-edge must be positive");
    pr.mesh_edge = *a.mesh_edge;
  }
  if (a.seed) pr.seed = *a.seed;
  return pr;
}

json problem_summary(const Problem& pr) {
  json j;
  j["functional"] = functional_name(pr.functional);
  if (pr.functional != Functional::WeightedDirichlet) j["p"] = pr.p;
  if (pr.phi) j["phi"] = pr.phi->label();
  j["mesh_edge"] = pr.mesh_edge;
  j["seed"] = pr.seed;
  j["options"] = json{{"max_iterations", pr.options.max_iterations},
                      {"tol_grad", pr.options.tol_grad},
                      {"area_floor", pr.options.area_floor},
                      {"armijo", pr.options.armijo}};
  return j;
}

// The field whose holomorphy the problem's minimizer should satisfy.
HopfField problem_field(const Problem& pr, const DiscreteMap& h) {
  if (pr.functional == Functional::WeightedDirichlet) return hopf_differential(h, *pr.phi);
  return inner_variational_field(h, pr.p);
}

EnergyBreakdown problem_energy(const Problem& pr, const SolveReport& r) {
  switch (pr.functional) {
    case Functional::MeanDistortion:
      return r.forward ? mean_distortion(*r.forward, pr.p) : inverse_energy(r.map, pr.p);
    case Functional::InverseEnergy:
      return inverse_energy(r.map, pr.p);
    case Functional::WeightedDirichlet:
      return weighted_dirichlet(r.map, *pr.phi);
  }
  return {};
}

void write_trace_csv(const fs::path& path, const SolveReport& r) {
  std::string s = "iteration,energy\n";
  for (auto [i, e] : r.energy_trace) s += std::to_string(i) + "," + fmt(e) + "\n";
  io::write_file(path.string(), s);
}

// ---------------------------------------------------------------------------

int cmd_mesh(const Args& a) {
  Domain d;
  double edge = a.mesh_edge.value_or(0.1);
  if (!a.domain.empty()) {
    d = io::domain_from_json(io::read_file(a.domain));
  } else {
    const Problem pr = load_problem(a);
    d = pr.source;
    edge = pr.mesh_edge;
  }
  if (!(edge > 0)) throw ConfigError("--mesh-edge must be positive");
  const auto m = triangulate(d, edge);
  validate_mesh(m);
  const auto dir = out_dir(a);
  json j{{"target_edge", edge},
         {"vertices", m.num_vertices()},
         {"triangles", m.num_triangles()},
         {"boundary_vertices", m.boundary_loop.size()},
         {"max_edge", m.max_edge()},
         {"area", m.total_area()},
         {"domain_area", d.area()}};
  write_json(dir / "mesh_report.json", j);
  write_json(dir / "mesh.json", io::to_json(m));
  io::write_file((dir / "mesh.svg").string(), svg::mesh(m));
  std::cout << "mesh: " << m.num_vertices() << " vertices, " << m.num_triangles() << " triangles\n";
  return kOk;
}

int cmd_minimize(const Args& a) {
  const Problem pr = load_problem(a);
  const auto disc = discretize(pr);
  DiscreteMap init;
  if (a.seed) {
    std::mt19937_64 rng(*a.seed);
    init = random_injective_init(disc, rng);
  } else {
    init = default_init(disc);
  }
  const SolveReport r = solve(pr, init);
  const auto dir = out_dir(a);

  Checks checks;
  checks.upper("grad_norm", r.grad_norm, r.tol_grad);
  checks.lower("min_J", r.min_J, 0.0);

  json j;
  j["problem"] = problem_summary(pr);
  j["init"] = a.seed ? "random" : "default";
  j["solve"] = io::to_json(r);
  if (r.min_J > 0) j["energy"] = io::to_json(problem_energy(pr, r));
  j["variable"] = pr.functional == Functional::MeanDistortion ? "inverse" : "forward";
  j["checks"] = checks.list;
  j["pass"] = checks.ok;
  write_json(dir / "report.json", j);
  write_json(dir / "map.json", io::to_json(r.map));
  if (r.forward) write_json(dir / "forward_map.json", io::to_json(*r.forward));
  write_trace_csv(dir / "energy_trace.csv", r);
  io::write_file((dir / "map.svg").string(), svg::map(r.map, disc.codomain));
  if (r.min_J > 0) io::write_file((dir / "hopf.svg").string(), svg::hopf(problem_field(pr, r.map)));

  std::cout << "minimize: energy " << fmt(r.energy) << ", " << r.iterations << " iterations, "
            << (r.converged ? "converged" : "not converged: " + r.message) << "\n";
  return checks.ok ? kOk : kNumerical;
}

// Pair file:
//   {"h": {"domain": D, "mesh_edge": e, "map": M, "inner": M'},   h = M o M'
//    "H": {"domain": D, "mesh_edge": e, "map": M},
//    "phi": "const:1", "tolerance": t}
struct PairSide {
  MeshPtr mesh;
  DiscreteMap map;
  bool affine = true;
};

PairSide load_side(const json& j, std::optional<double> edge_override) {
  PairSide s;
  const Domain d = io::domain_from_json(j.at("domain"));
  const double edge = edge_override.value_or(j.value("mesh_edge", 0.1));
  if (!(edge > 0)) throw ConfigError("pair: mesh_edge must be positive");
  s.mesh = std::make_shared<TriangleMesh>(triangulate(d, edge));
  const SmoothMap outer = io::smooth_map_from_json(j.at("map"), d);
  s.affine = outer.bumps.empty();
  if (j.contains("inner")) {
    const SmoothMap inner = io::smooth_map_from_json(j["inner"], d);
    s.affine = s.affine && inner.bumps.empty();
    s.map = DiscreteMap::sample(s.mesh, [&](Point z) { return outer(inner(z)); });
  } else {
    s.map = DiscreteMap::sample(s.mesh, [&](Point z) { return outer(z); });
  }
  return s;
}

int cmd_verify_identity(const Args& a) {
  if (a.pair.empty()) throw ConfigError("--pair is required");
  json cfg = io::read_file(a.pair);
  PairSide h, H;
  WeightFn phi = WeightFn::constant(1.0);
  try {
    h = load_side(cfg.at("h"), a.mesh_edge);
    H = load_side(cfg.at("H"), std::nullopt);
    if (cfg.contains("phi")) phi = WeightFn::parse(cfg["phi"].get<std::string>());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("pair: ") + e.what());
  }
  const bool affine = h.affine && H.affine;
  const double tol = cfg.value("tolerance", affine ? 1e-10 : 5e-3);
  const auto r = integral_identity(h.map, H.map, phi);
  const double rel = r.gap / std::abs(r.lhs);

  Checks checks;
  if (affine)
    checks.upper("gap", r.gap, tol);
  else
    checks.upper("gap_relative", rel, tol);
  json j;
  j["pair"] = affine ? "affine" : "smooth";
  j["phi"] = phi.label();
  j["h_max_edge"] = h.mesh->max_edge();
  j["identity"] = io::to_json(r);
  j["gap_relative"] = rel;
  j["checks"] = checks.list;
  j["pass"] = checks.ok;
  write_json(out_dir(a) / "identity.json", j);
  std::cout << "verify-identity: gap " << fmt(r.gap) << " (relative " << fmt(rel) << "), "
            << (checks.ok ? "pass" : "FAIL") << "\n";
  return checks.ok ? kOk : kViolation;
}

int cmd_verify_hopf(const Args& a) {
  const Problem pr = load_problem(a);
  DiscreteMap h;
  if (!a.map.empty()) {
    h = io::map_from_json(io::read_file(a.map));
  } else {
    const auto r = solve(pr);
    if (!r.converged) throw NumericalError("verify-hopf: minimizer did not converge: " + r.message);
    h = r.map;
  }
  const auto field = problem_field(pr, h);
  const auto res = holomorphy_residual(field);
  const auto hv = hv_derivatives(field);
  const double threshold = 2.0 * h.reference->max_edge();

  Checks checks;
  checks.upper("hv_max", hv.max(), 1e-12);
  checks.upper("residual_mean", res.mean_rel, threshold);
  json j;
  j["problem"] = problem_summary(pr);
  j["residual"] = io::to_json(res, true);
  j["hv"] = io::to_json(hv);
  if (pr.functional == Functional::WeightedDirichlet) {
    // against the initial map with the same boundary values (reported only)
    const auto init = default_init(discretize(pr));
    j["identity"] = io::to_json(integral_identity(init, h, *pr.phi));
  }
  j["checks"] = checks.list;
  j["pass"] = checks.ok;
  const auto dir = out_dir(a);
  write_json(dir / "hopf_report.json", j);
  io::write_file((dir / "hopf.svg").string(), svg::hopf(field));
  std::cout << "verify-hopf: residual mean " << fmt(res.mean_rel) << ", max " << fmt(res.max_rel) << ", hv "
            << fmt(hv.max()) << ", " << (checks.ok ? "pass" : "FAIL") << "\n";
  return checks.ok ? kOk : kViolation;
}

TrajectoryKind parse_kind(const std::string& s) {
  if (s == "vertical") return TrajectoryKind::Vertical;
  if (s == "horizontal") return TrajectoryKind::Horizontal;
  throw ConfigError("--kind must be vertical or horizontal");
}

int cmd_trace(const Args& a) {
  if (!(a.step > 0)) throw ConfigError("--step must be positive");
  const Domain d = a.domain.empty() ? make_disk_polygon(256, 2.0) : io::domain_from_json(io::read_file(a.domain));
  const auto qd = QuadraticDifferential::polynomial(QuadraticDifferential::parse_polynomial(a.qd), d);
  const auto kind = parse_kind(a.kind);
  const auto t = trace(qd, parse_point(a.start), kind, a.step);

  // In the natural parameter the trajectory is a straight line: Re zeta is
  // constant on vertical ones, Im zeta on horizontal ones.
  const auto zeta = natural_parameter(qd, t.points);
  double across = 0.0, lo = 0.0, hi = 0.0;
  for (const auto& z : zeta) {
    const double off = kind == TrajectoryKind::Vertical ? z.real() : z.imag();
    const double along = kind == TrajectoryKind::Vertical ? z.imag() : z.real();
    across = std::max(across, std::abs(off));
    lo = std::min(lo, along);
    hi = std::max(hi, along);
  }
  const double span = hi - lo;
  const auto mr = minimality_check(qd, t, a.competitors, a.seed.value_or(1));

  Checks checks;
  checks.upper("straightness", span > 0 ? across / span : across, 1e-6);
  checks.upper("length_vs_span", span > 0 ? std::abs(t.phi_length - span) / span : 0.0, 1e-6);
  checks.lower("minimality_margin", mr.margin, -1e-9);
  json j;
  j["qd"] = a.qd;
  j["start"] = io::point(parse_point(a.start));
  j["step"] = a.step;
  j["domain"] = io::to_json(d);
  j["trajectory"] = io::to_json(t);
  j["zeta_span"] = span;
  j["minimality"] = io::to_json(mr);
  j["checks"] = checks.list;
  j["pass"] = checks.ok;
  const auto dir = out_dir(a);
  write_json(dir / "trajectory.json", j);
  io::write_file((dir / "trajectory.svg").string(), svg::trajectories(d, {t}));
  std::cout << "trace: " << t.points.size() << " points, phi-length " << fmt(t.phi_length) << ", "
            << (checks.ok ? "pass" : "FAIL") << "\n";
  return checks.ok ? kOk : kViolation;
}

// Fubini config:
//   {"qd": "z", "domain": D, "F": weight, "G": weight, "a": [x, y], "b": [x, y],
//    "spacing": 1e-2, "step": 1e-3, "quad_edge": 0.02, "tolerance": 1e-3}
int cmd_fubini(const Args& a) {
  if (a.problem.empty()) throw ConfigError("--problem is required (fubini config)");
  const json cfg = io::read_file(a.problem);
  std::optional<QuadraticDifferential> qd;
  std::optional<WeightFn> F, G;
  TrajectoryFamily fam;
  double tol = 1e-3;
  try {
    const Domain d = io::domain_from_json(cfg.at("domain"));
    qd = QuadraticDifferential::polynomial(QuadraticDifferential::parse_polynomial(cfg.value("qd", "z")), d);
    F = WeightFn::parse(cfg.at("F").get<std::string>());
    G = WeightFn::parse(cfg.at("G").get<std::string>());
    fam.a = io::point_from(cfg.at("a"));
    fam.b = io::point_from(cfg.at("b"));
    fam.spacing = cfg.value("spacing", fam.spacing);
    fam.step = a.step != 1e-3 ? a.step : cfg.value("step", fam.step);
    fam.quad_edge = cfg.value("quad_edge", fam.quad_edge);
    tol = cfg.value("tolerance", tol);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("fubini: ") + e.what());
  }
  const auto r = fubini_check(*qd, [&](Point z) { return (*F)(z); }, [&](Point z) { return (*G)(z); }, fam);

  Checks checks;
  checks.upper("coverage_error", r.coverage_error, tol);
  checks.flag("implication", !r.all_lines_hold || r.implication_holds);
  json j;
  j["qd"] = cfg.value("qd", "z");
  j["F"] = F->label();
  j["G"] = G->label();
  j["step"] = fam.step;
  j["quad_edge"] = fam.quad_edge;
  j["fubini"] = io::to_json(r);
  j["checks"] = checks.list;
  j["pass"] = checks.ok;
  write_json(out_dir(a) / "fubini.json", j);
  std::cout << "fubini: " << r.lines.size() << " lines, coverage error " << fmt(r.coverage_error) << ", "
            << (checks.ok ? "pass" : "FAIL") << "\n";
  return checks.ok ? kOk : kViolation;
}

int cmd_uniqueness(const Args& a) {
  const Problem pr = load_problem(a);
  const auto u = uniqueness_experiment(pr, a.starts, pr.seed);
  const double tol = 1e-4;
  json j;
  j["problem"] = problem_summary(pr);
  j["starts"] = a.starts;
  j["uniqueness"] = io::to_json(u);
  Checks checks;
  checks.flag("all_converged", u.all_converged);
  checks.flag("certified", !u.inconclusive);
  checks.upper("max_pairwise", u.max_pairwise, tol);
  j["checks"] = checks.list;
  j["pass"] = checks.ok;
  j["note"] = "multi-start evidence for uniqueness, not a proof";
  const auto dir = out_dir(a);
  write_json(dir / "uniqueness.json", j);
  std::string csv;
  for (const auto& row : u.pairwise_linf) {
    for (std::size_t k = 0; k < row.size(); ++k) csv += (k ? "," : "") + fmt(row[k]);
    csv += "\n";
  }
  io::write_file((dir / "pairwise.csv").string(), csv);
  std::cout << "uniqueness: max pairwise " << fmt(u.max_pairwise) << (u.inconclusive ? ", inconclusive" : "")
            << "\n";
  if (u.inconclusive) return kNumerical;
  return checks.ok ? kOk : kViolation;
}

int cmd_choquet(const Args& a) {
  SolveOptions opt;
  if (a.tol_grad) opt.tol_grad = *a.tol_grad;
  const double edge = a.mesh_edge.value_or(0.1);
  if (!(edge > 0)) throw ConfigError("--mesh-edge must be positive");
  const auto c = choquet_experiment(edge, opt);
  const double margin_tol = 1e-3;

  Checks checks;
  checks.lower("max_exterior_margin", c.max_exterior_margin, margin_tol);
  checks.flag("minimizer_converged", c.minimizer.converged);
  checks.lower("min_J_forward", c.min_J_forward, 0.0);
  json j;
  j["mesh_edge"] = edge;
  j["exterior_vertices"] = c.exterior.size();
  j["max_exterior_margin"] = c.max_exterior_margin;
  j["worst_image"] = io::point(c.worst_image);
  j["min_J_forward"] = c.min_J_forward;
  j["minimizer"] = io::to_json(c.minimizer);
  j["checks"] = checks.list;
  j["pass"] = checks.ok;
  const auto dir = out_dir(a);
  write_json(dir / "choquet.json", j);
  io::write_file((dir / "harmonic.svg").string(), svg::map(c.harmonic, l_shape()));
  if (c.minimizer.forward) io::write_file((dir / "minimizer.svg").string(), svg::map(*c.minimizer.forward, l_shape()));
  std::cout << "choquet: " << c.exterior.size() << " exterior vertices, margin " << fmt(c.max_exterior_margin)
            << ", minimizer min_J " << fmt(c.min_J_forward) << "\n";
  if (!c.minimizer.converged) return kNumerical;
  return checks.ok ? kOk : kViolation;
}

int cmd_report(const Args& a) {
  if (a.map.empty()) throw ConfigError("--map is required");
  const DiscreteMap f = io::map_from_json(io::read_file(a.map));
  const double p = a.p.value_or(2.0);
  if (!(p > 1.0)) throw ConfigError("--p must be > 1");
  const auto d = derivatives(f);
  json j;
  j["vertices"] = f.reference->num_vertices();
  j["triangles"] = f.reference->num_triangles();
  j["min_J"] = min_jacobian(d);
  j["mean_distortion"] = io::to_json(mean_distortion(f, p));
  j["inverse_energy"] = io::to_json(inverse_energy(f, p));
  j["dirichlet"] = io::to_json(weighted_dirichlet(f, WeightFn::constant(1.0)));
  const auto dir = out_dir(a);
  write_json(dir / "map_report.json", j);
  io::write_file((dir / "map.svg").string(), svg::map(f, std::nullopt));
  std::cout << "report: min_J " << fmt(min_jacobian(d)) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hopfmin: mean-distortion and weighted Dirichlet minimization"};
  app.require_subcommand(1);
  Args a;

  auto common = [&](CLI::App* s) { s->add_option("--out", a.out, "Output directory"); };
  auto solver = [&](CLI::App* s) {
    s->add_option("--problem", a.problem, "Problem file")->required();
    s->add_option("--p", a.p, "Exponent override (p > 1)");
    s->add_option("--tol-grad", a.tol_grad, "Gradient tolerance override");
    s->add_option("--mesh-edge", a.mesh_edge, "Target mesh edge override");
  };

  auto* mesh = app.add_subcommand("mesh", "Triangulate the problem's source domain");
  mesh->add_option("--problem", a.problem, "Problem file");
  mesh->add_option("--domain", a.domain, "Domain file");
  mesh->add_option("--mesh-edge", a.mesh_edge, "Target mesh edge");
  common(mesh);

  auto* minimize_cmd = app.add_subcommand("minimize", "Minimize a boundary-value problem");
  solver(minimize_cmd);
  minimize_cmd->add_option("--seed", a.seed, "Random injective initialization");
  common(minimize_cmd);

  auto* identity = app.add_subcommand("verify-identity", "Integral identity for a pair of maps");
  identity->add_option("--pair", a.pair, "Pair file")->required();
  identity->add_option("--mesh-edge", a.mesh_edge, "Mesh edge for h");
  common(identity);

  auto* hopf = app.add_subcommand("verify-hopf", "Hopf differential residuals of a minimizer");
  solver(hopf);
  hopf->add_option("--map", a.map, "Use this map instead of solving");
  common(hopf);

  auto* tr = app.add_subcommand("trace", "Trace a trajectory of phi dz^2");
  tr->add_option("--qd", a.qd, "Polynomial phi, e.g. z or z^2-1");
  tr->add_option("--start", a.start, "Start point x,y");
  tr->add_option("--kind", a.kind, "vertical or horizontal");
  tr->add_option("--step", a.step, "RK4 step in the phi metric");
  tr->add_option("--domain", a.domain, "Domain file (default: disk of radius 2)");
  tr->add_option("--seed", a.seed, "Seed for the minimality competitors");
  common(tr);

  auto* fub = app.add_subcommand("fubini", "Line-by-line comparison over a trajectory family");
  fub->add_option("--problem", a.problem, "Fubini config file")->required();
  fub->add_option("--step", a.step, "Trace step override");
  common(fub);

  auto* uniq = app.add_subcommand("uniqueness", "Multi-start uniqueness experiment");
  solver(uniq);
  uniq->add_option("--starts", a.starts, "Number of random starts")->check(CLI::Range(2, 1000));
  uniq->add_option("--seed", a.seed, "Seed for the starts");
  common(uniq);

  auto* cho = app.add_subcommand("choquet", "Harmonic extension vs p = 2 minimizer on the L-shape");
  cho->add_option("--mesh-edge", a.mesh_edge, "Mesh edge");
  cho->add_option("--tol-grad", a.tol_grad, "Gradient tolerance");
  common(cho);

  auto* rep = app.add_subcommand("report", "Energies and distortion of a map file");
  rep->add_option("--map", a.map, "Map file")->required();
  rep->add_option("--p", a.p, "Exponent");
  common(rep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*mesh) return cmd_mesh(a);
    if (*minimize_cmd) return cmd_minimize(a);
    if (*identity) return cmd_verify_identity(a);
    if (*hopf) return cmd_verify_hopf(a);
    if (*tr) return cmd_trace(a);
    if (*fub) return cmd_fubini(a);
    if (*uniq) return cmd_uniqueness(a);
    if (*cho) return cmd_choquet(a);
    if (*rep) return cmd_report(a);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
  return kConfig;
}
