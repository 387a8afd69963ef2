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

#include "hopfmin/io.hpp"

#include <cmath>
#include <cstdio>
#include <string_view>
#include <fstream>
#include <numbers>
#include <sstream>

namespace hopfmin::io {

namespace {

// JSON has no infinity; encode it as a string.
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double get_double(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ConfigError(std::string("expected a number for '") + key + "'");
  return j[key].get<double>();
}

AffineMap affine_from_json(const json& j) {
  AffineMap a;
  if (j.contains("a")) a.a = point_from(j["a"]);
  if (j.contains("b")) a.b = point_from(j["b"]);
  if (j.contains("c")) a.c = point_from(j["c"]);
  if (!(a.jacobian() > 0)) throw ConfigError("affine map: need |b| < |a|");
  return a;
}

}  // namespace

json point(Point p) { return json::array({p.real(), p.imag()}); }

Point point_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError("expected a point [x, y], got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const Domain& d) {
  json j;
  j["kind"] = d.kind == DomainKind::DiskPolygon ? "disk" : d.kind == DomainKind::Rectangle ? "rectangle" : "polygon";
  j["convex"] = d.convex;
  j["area"] = d.area();
  json v = json::array();
  for (const auto& p : d.vertices) v.push_back(point(p));
  j["vertices"] = std::move(v);
  return j;
}

Domain domain_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ConfigError("domain: expected an object with 'kind'");
  const std::string kind = j["kind"];
  if (kind == "disk") {
    const int n = j.value("n", 64);
    if (n < 3) throw ConfigError("domain: disk needs n >= 3");
    const double r = get_double(j, "radius", 1.0);
    if (!(r > 0)) throw ConfigError("domain: radius must be positive");
    return make_disk_polygon(n, r, j.contains("center") ? point_from(j["center"]) : Point(0.0, 0.0));
  }
  if (kind == "rectangle") {
    const double w = get_double(j, "width", 1.0), h = get_double(j, "height", 1.0);
    if (!(w > 0 && h > 0)) throw ConfigError("domain: rectangle sides must be positive");
    return make_rectangle(w, h, j.contains("origin") ? point_from(j["origin"]) : Point(0.0, 0.0));
  }
  if (kind == "polygon") {
    std::vector<Point> v;
    for (const auto& p : j.at("vertices")) v.push_back(point_from(p));
    return make_polygon(std::move(v));
  }
  if (kind == "lshape") return l_shape();
  throw ConfigError("domain: unknown kind '" + kind + "'");
}

json to_json(const TriangleMesh& m) {
  json j;
  json v = json::array(), t = json::array();
  for (const auto& p : m.vertices) v.push_back(point(p));
  for (const auto& tr : m.triangles) t.push_back(json::array({tr[0], tr[1], tr[2]}));
  j["vertices"] = std::move(v);
  j["triangles"] = std::move(t);
  j["boundary_loop"] = m.boundary_loop;
  return j;
}

TriangleMesh mesh_from_json(const json& j) {
  TriangleMesh m;
  try {
    for (const auto& p : j.at("vertices")) m.vertices.push_back(point_from(p));
    for (const auto& t : j.at("triangles")) m.triangles.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()});
    m.boundary_loop = j.at("boundary_loop").get<std::vector<int>>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("mesh: ") + e.what());
  }
  validate_mesh(m);
  return m;
}

json to_json(const DiscreteMap& m) {
  json j;
  j["mesh"] = to_json(*m.reference);
  json t = json::array();
  for (const auto& p : m.targets) t.push_back(point(p));
  j["targets"] = std::move(t);
  return j;
}

DiscreteMap map_from_json(const json& j) {
  DiscreteMap m;
  m.reference = std::make_shared<TriangleMesh>(mesh_from_json(j.at("mesh")));
  for (const auto& p : j.at("targets")) m.targets.push_back(point_from(p));
  if (m.targets.size() != m.reference->vertices.size()) throw ConfigError("map: one target per vertex required");
  return m;
}

json to_json(const BoundaryMap& b) {
  json s = json::array();
  for (const auto& x : b.samples) s.push_back(json{{"s", x.s}, {"w", point(x.w)}});
  return json{{"kind", "samples"}, {"samples", std::move(s)}};
}

BoundaryMap boundary_from_json(const json& j, const Domain& source, const Domain& target) {
  const std::string kind = j.value("kind", "");
  if (kind == "samples") {
    BoundaryMap b;
    for (const auto& x : j.at("samples")) {
      if (x.is_object() && x.contains("s") && x.contains("w"))
        b.samples.push_back({x["s"].get<double>(), point_from(x["w"])});
      else if (x.is_array() && x.size() == 3)
        b.samples.push_back({x[0].get<double>(), {x[1].get<double>(), x[2].get<double>()}});
      else
        throw ConfigError("boundary: samples are {\"s\": s, \"w\": [x, y]}");
    }
    return b;
  }
  const int n = j.value("n", 256);
  if (n < 3) throw ConfigError("boundary: n must be >= 3");
  if (kind == "reparam") {
    const double shift = get_double(j, "shift", 0.0);
    std::vector<std::pair<double, double>> modes;
    if (j.contains("modes"))
      for (const auto& m : j["modes"]) modes.emplace_back(m.at(0).get<double>(), m.at(1).get<double>());
    return sample_boundary_map(target, n, [&](double s) {
      double t = shift + s;
      for (auto [k, a] : modes) t += a * std::sin(2.0 * std::numbers::pi * k * s);
      return t;
    });
  }
  if (kind == "affine") {
    const AffineMap a = affine_from_json(j);
    BoundaryMap b;
    for (int k = 0; k < n; ++k) {
      const double s = static_cast<double>(k) / n;
      const Point w = a(source.point_at(s));
      if (target.boundary_distance(w) > 1e-9 * (1.0 + target.diameter()))
        throw ConfigError("boundary: affine image of the source boundary is not on the target boundary");
      b.samples.push_back({s, w});
    }
    return b;
  }
  if (kind == "choquet") return choquet_boundary_map(source, target, j.value("n", 400));
  throw ConfigError("boundary: unknown kind '" + kind + "'");
}

Problem problem_from_json(const json& j) {
  Problem p;
  try {
    p.source = domain_from_json(j.at("source"));
    p.target = domain_from_json(j.at("target"));
    p.boundary = boundary_from_json(j.at("boundary"), p.source, p.target);
    const auto& f = j.at("functional");
    p.functional = parse_functional(f.at("kind").get<std::string>());
    p.p = get_double(f, "p", 2.0);
    if (f.contains("phi")) p.phi = WeightFn::parse(f["phi"].get<std::string>());
    if (p.functional == Functional::WeightedDirichlet && !p.phi) p.phi = WeightFn::constant(1.0);
    p.mesh_edge = get_double(j, "mesh_edge", 0.1);
    if (!(p.mesh_edge > 0)) throw ConfigError("problem: mesh_edge must be positive");
    if (j.contains("options")) {
      const auto& o = j["options"];
      p.options.max_iterations = o.value("max_iterations", p.options.max_iterations);
      p.options.tol_grad = get_double(o, "tol_grad", p.options.tol_grad);
      p.options.area_floor = get_double(o, "area_floor", p.options.area_floor);
    }
    p.seed = j.value("seed", std::uint64_t{0});
  } catch (const json::exception& e) {
    throw ConfigError(std::string("problem: ") + e.what());
  }
  if (p.functional != Functional::WeightedDirichlet && !(p.p > 1.0))
    throw ConfigError("problem: p must be > 1");
  return p;
}

SmoothMap smooth_map_from_json(const json& j, const Domain& support) {
  if (j.contains("affine")) {
    SmoothMap m;
    m.affine = affine_from_json(j["affine"]);
    return m;
  }
  if (j.contains("smooth")) {
    const auto& s = j["smooth"];
    std::mt19937_64 rng(s.value("seed", std::uint64_t{1}));
    const AffineMap a = s.contains("affine") ? affine_from_json(s["affine"]) : AffineMap{};
    const double strength = get_double(s, "strength", 0.3);
    if (!(strength > 0 && strength < 1)) throw ConfigError("smooth map: strength must lie in (0, 1)");
    const double min_radius = get_double(s, "min_radius", 0.03);
    if (!(min_radius > 0 && min_radius < 0.5)) throw ConfigError("smooth map: min_radius must lie in (0, 0.5)");
    return random_smooth_map(rng, support, s.value("bumps", 3), strength, a, min_radius);
  }
  throw ConfigError("map spec: expected 'affine' or 'smooth'");
}

json to_json(const EnergyBreakdown& e, bool per_triangle) {
  json j;
  j["functional"] = e.functional;
  j["p"] = e.p;
  j["convention_constant"] = e.convention_constant;
  j["total"] = number(e.total);
  j["min_density"] = number(e.min_density);
  j["max_density"] = number(e.max_density);
  j["offenders"] = e.offenders;
  if (per_triangle) {
    json pt = json::array();
    for (double v : e.per_triangle) pt.push_back(number(v));
    j["per_triangle"] = std::move(pt);
  }
  return j;
}

json to_json(const SolveReport& r) {
  json j;
  j["energy"] = number(r.energy);
  j["grad_norm"] = r.grad_norm;
  j["tol_grad"] = r.tol_grad;
  j["hopf_residual"] = r.hopf_residual;
  j["hopf_residual_mean"] = r.hopf_residual_mean;
  j["min_J"] = r.min_J;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["message"] = r.message;
  json tr = json::array();
  for (auto [i, e] : r.energy_trace) tr.push_back(json::array({i, e}));
  j["energy_trace"] = std::move(tr);
  return j;
}

json to_json(const UniquenessReport& u) {
  json j;
  json runs = json::array();
  for (const auto& r : u.reports) {
    json x = to_json(r);
    x.erase("energy_trace");
    runs.push_back(std::move(x));
  }
  j["runs"] = std::move(runs);
  j["pairwise_linf"] = u.pairwise_linf;
  j["max_pairwise"] = u.max_pairwise;
  j["all_converged"] = u.all_converged;
  j["residual_threshold"] = u.residual_threshold;
  j["inconclusive"] = u.inconclusive;
  return j;
}

json to_json(const IdentityRecord& r) {
  return json{{"lhs", r.lhs}, {"rhs_term1", r.rhs_term1}, {"rhs_term2", r.rhs_term2}, {"gap", r.gap}, {"clipped", r.clipped}};
}

json to_json(const ResidualReport& r, bool per_vertex) {
  json j{{"max_rel", r.max_rel}, {"mean_rel", r.mean_rel}, {"interior_vertices", r.vertices.size()}};
  if (per_vertex) {
    j["vertices"] = r.vertices;
    j["loop_residuals"] = r.loop_residuals;
  }
  return j;
}

json to_json(const HVReport& r) {
  return json{{"triangles", r.per_triangle.size()}, {"skipped", r.skipped},     {"max_r_sum", r.max_r_sum},
              {"max_r_product", r.max_r_product},   {"max_r_energy", r.max_r_energy}, {"max_r_order", r.max_r_order}};
}

json to_json(const HolderRecord& r) { return json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"gap", r.gap}}; }

json to_json(const Trajectory& t) {
  json j;
  j["kind"] = to_string(t.kind);
  j["termination"] = json::array({to_string(t.termination[0]), to_string(t.termination[1])});
  j["tangential_exit"] = json::array({t.tangential_exit[0], t.tangential_exit[1]});
  j["start_index"] = t.start_index;
  j["phi_length"] = t.phi_length;
  json pts = json::array();
  for (const auto& p : t.points) pts.push_back(point(p));
  j["points"] = std::move(pts);
  return j;
}

json to_json(const MinimalityRecord& r) {
  return json{{"traj_length", r.traj_length}, {"min_competitor", number(r.min_competitor)},
              {"margin", r.margin},           {"competitors", r.competitors},
              {"discarded", r.discarded},     {"degenerate", r.degenerate}};
}

json to_json(const FubiniRecord& r) {
  json lines = json::array();
  for (const auto& l : r.lines)
    lines.push_back(json{{"seed", point(l.seed)}, {"line_F", l.line_F}, {"line_G", l.line_G}, {"holds", l.holds}});
  return json{{"spacing", r.spacing},
              {"domain_lhs", r.domain_lhs},
              {"domain_rhs", r.domain_rhs},
              {"lines_lhs", r.lines_lhs},
              {"lines_rhs", r.lines_rhs},
              {"coverage_error", r.coverage_error},
              {"all_lines_hold", r.all_lines_hold},
              {"implication_holds", r.implication_holds},
              {"line_comparisons", std::move(lines)}};
}

json to_json(const EquivalenceReport& r) {
  return json{{"energy", r.energy},
              {"hopf_residual", r.hopf_residual},
              {"hopf_residual_mean", r.hopf_residual_mean},
              {"competitor_gaps", r.competitor_gaps},
              {"is_min_cert", r.is_min_cert}};
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "': " + e.what());
  }
}

namespace {

void emit(std::string& out, const json& j, int indent) {
  const std::string pad(indent + 2, ' ');
  switch (j.type()) {
    case json::value_t::number_float: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
      out += buf;
      // keep it a float when read back
      if (std::string_view(buf).find_first_of(".eEn") == std::string_view::npos) out += ".0";
      return;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(k).dump() + ": ";
        emit(out, v, indent + 2);
      }
      out += "\n" + std::string(indent, ' ') + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        emit(out, j[i], indent + 2);
      }
      out += "\n" + std::string(indent, ' ') + "]";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump(const json& j) {
  std::string out;
  emit(out, j, 0);
  return out + "\n";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

}  // namespace hopfmin::io
