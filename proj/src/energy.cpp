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

#include "hopfmin/energy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hopfmin {

namespace {

template <class Density>
void run_kernel(const ReferenceFrames& fr, std::span<const Point> targets, const Density& density, bool parallel,
                std::vector<double>& energy, std::vector<Complex>& grad3) {
  energy.assign(fr.num_triangles(), 0.0);
  grad3.assign(3 * static_cast<std::size_t>(fr.num_triangles()), Complex(0.0, 0.0));
  if (parallel)
    kernels::omp::evaluate(fr, targets, density, std::span<double>(energy), std::span<Complex>(grad3));
  else
    kernels::serial::evaluate(fr, targets, density, std::span<double>(energy), std::span<Complex>(grad3));
}

void finish(EnergyBreakdown& e, const ReferenceFrames& fr) {
  e.total = kernels::ordered_sum(e.per_triangle);
  if (e.per_triangle.empty()) return;
  e.min_density = std::numeric_limits<double>::infinity();
  e.max_density = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < fr.num_triangles(); ++t) {
    const double d = e.per_triangle[t] / fr.area[t];
    e.min_density = std::min(e.min_density, d);
    e.max_density = std::max(e.max_density, d);
  }
}

std::vector<int> flipped(const DerivField& d) {
  std::vector<int> out;
  for (int t = 0; t < static_cast<int>(d.size()); ++t)
    if (!d[t].orientation_ok) out.push_back(t);
  return out;
}

void check_weight(double w, Point at) {
  if (!(w > 0)) {
    std::ostringstream os;
    os.precision(17);
    os << "weight: nonpositive sample " << w << " at (" << at.real() << ", " << at.imag() << ")";
    throw ConfigError(os.str());
  }
}

}  // namespace

bool EnergyBreakdown::finite() const { return std::isfinite(total); }

EnergyBreakdown mean_distortion(const DiscreteMap& f, double p, Mode mode, bool parallel) {
  if (!(p >= 1.0)) throw ConfigError("mean_distortion: p must be >= 1");
  const auto fr = ReferenceFrames::build(*f.reference);
  const auto d = derivatives(f, fr);
  EnergyBreakdown e;
  e.functional = "mean_distortion";
  e.p = p;
  e.convention_constant = 1.0;
  e.offenders = flipped(d);
  e.per_triangle.resize(d.size());
  const int n = static_cast<int>(d.size());
  const bool inf = mode == Mode::Optimization && !e.offenders.empty();
#pragma omp parallel for schedule(static) if (parallel)
  for (int t = 0; t < n; ++t) e.per_triangle[t] = inf && !d[t].orientation_ok
                                                      ? std::numeric_limits<double>::infinity()
                                                      : std::pow(d[t].K, p) * fr.area[t];
  finish(e, fr);
  return e;
}

EnergyBreakdown inverse_energy(const DiscreteMap& h, double p, bool parallel) {
  if (!(p >= 1.0)) throw ConfigError("inverse_energy: p must be >= 1");
  const auto fr = ReferenceFrames::build(*h.reference);
  std::vector<Complex> grad3;
  EnergyBreakdown e;
  e.functional = "inverse_energy";
  e.p = p;
  e.convention_constant = 1.0;
  run_kernel(fr, h.targets, densities::InverseEnergy{p}, parallel, e.per_triangle, grad3);
  for (int t = 0; t < fr.num_triangles(); ++t)
    if (!std::isfinite(e.per_triangle[t])) e.offenders.push_back(t);
  finish(e, fr);
  return e;
}

EnergyBreakdown weighted_dirichlet(const DiscreteMap& h, const WeightFn& phi, Quadrature q, bool parallel) {
  const auto fr = ReferenceFrames::build(*h.reference);
  const auto d = derivatives(h, fr);
  const int n = fr.num_triangles();
  EnergyBreakdown e;
  e.functional = "weighted_dirichlet";
  e.convention_constant = 2.0;
  e.offenders = flipped(d);
  e.per_triangle.assign(n, 0.0);
  // Weight samples are taken serially: sampled weights may carry a point
  // locator, and a failure must report the first offending triangle.
  std::vector<double> w(n);
  for (int t = 0; t < n; ++t) {
    const Tri& tri = fr.tris[t];
    const Point p0 = h.targets[tri[0]], p1 = h.targets[tri[1]], p2 = h.targets[tri[2]];
    if (q == Quadrature::Centroid) {
      const Point c = (p0 + p1 + p2) / 3.0;
      w[t] = phi(c);
      check_weight(w[t], c);
    } else {
      double s = 0.0;
      for (const Point c : {(4.0 * p0 + p1 + p2) / 6.0, (p0 + 4.0 * p1 + p2) / 6.0, (p0 + p1 + 4.0 * p2) / 6.0}) {
        const double v = phi(c);
        check_weight(v, c);
        s += v;
      }
      w[t] = s / 3.0;
    }
  }
#pragma omp parallel for schedule(static) if (parallel)
  for (int t = 0; t < n; ++t)
    e.per_triangle[t] = w[t] * 2.0 * (std::norm(d[t].fz) + std::norm(d[t].fzb)) * fr.area[t];
  finish(e, fr);
  return e;
}

HolderRecord holder_check(const DiscreteMap& f, const DiscreteMap& g, double p) {
  if (!(p > 1.0)) throw ConfigError("holder_check: p must be > 1");
  const WeightFn phi = WeightFn::distortion_pullback(f, p);
  HolderRecord r;
  r.lhs = weighted_dirichlet(g, phi).total;
  const double Ef = mean_distortion(f, p).total;
  const double Eg = mean_distortion(invert(g), p).total;
  r.rhs = 2.0 * std::pow(Ef, (p - 1.0) / p) * std::pow(Eg, 1.0 / p);
  r.gap = r.rhs - r.lhs;
  return r;
}

std::string functional_name(Functional f) {
  switch (f) {
    case Functional::MeanDistortion: return "mean_distortion";
    case Functional::InverseEnergy: return "inverse_energy";
    case Functional::WeightedDirichlet: return "weighted_dirichlet";
  }
  return "?";
}

Functional parse_functional(const std::string& name) {
  if (name == "mean_distortion") return Functional::MeanDistortion;
  if (name == "inverse_energy") return Functional::InverseEnergy;
  if (name == "weighted_dirichlet") return Functional::WeightedDirichlet;
  throw ConfigError("unknown functional '" + name + "'");
}

Objective::Objective(MeshPtr reference, Functional kind, double p, std::optional<WeightFn> phi, bool parallel)
    : reference_(std::move(reference)),
      frames_(ReferenceFrames::build(*reference_)),
      kind_(kind),
      p_(p),
      phi_(std::move(phi)),
      parallel_(parallel) {
  if (kind_ == Functional::WeightedDirichlet) {
    if (!phi_) throw ConfigError("weighted_dirichlet objective needs a weight");
    if (!phi_->is_smooth()) throw ConfigError("weighted_dirichlet objective needs a smooth weight");
  } else if (!(p_ >= 1.0)) {
    throw ConfigError("objective: p must be >= 1");
  }
}

double Objective::run(std::span<const Point> targets, std::vector<Complex>* grad,
                      std::vector<double>* per_triangle) const {
  std::vector<double> energy;
  std::vector<Complex> grad3;
  switch (kind_) {
    case Functional::MeanDistortion:
      run_kernel(frames_, targets, densities::MeanDistortion{p_}, parallel_, energy, grad3);
      break;
    case Functional::InverseEnergy:
      run_kernel(frames_, targets, densities::InverseEnergy{p_}, parallel_, energy, grad3);
      break;
    case Functional::WeightedDirichlet:
      if (!phi_->is_constant()) {
        for (int t = 0; t < frames_.num_triangles(); ++t) {
          const Point c = kernels::image_centroid(frames_, targets, t);
          check_weight((*phi_)(c), c);
        }
      }
      run_kernel(frames_, targets, densities::WeightedDirichlet{&*phi_}, parallel_, energy, grad3);
      break;
  }
  const double total = kernels::ordered_sum(energy);
  if (grad) {
    grad->assign(frames_.num_vertices(), Complex(0.0, 0.0));
    if (std::isfinite(total)) {
      if (parallel_)
        kernels::omp::gather(frames_, grad3, *grad);
      else
        kernels::serial::gather(frames_, grad3, *grad);
    }
  }
  if (per_triangle) *per_triangle = std::move(energy);
  return total;
}

double Objective::value(std::span<const Point> targets) const { return run(targets, nullptr, nullptr); }

double Objective::value_and_gradient(std::span<const Point> targets, std::vector<Complex>& grad) const {
  return run(targets, &grad, nullptr);
}

double Objective::value_and_gradient(std::span<const Point> targets, std::vector<Complex>& grad,
                                     std::vector<double>& per_triangle) const {
  return run(targets, &grad, &per_triangle);
}

std::vector<double> Objective::metric_weights(std::span<const Point> targets) const {
  std::vector<double> w(frames_.num_triangles(), 1.0);
  for (int t = 0; t < frames_.num_triangles(); ++t) {
    const auto j = kernels::jet_of(frames_, targets, t);
    const double a = std::norm(j.fz), b = std::norm(j.fzb);
    switch (kind_) {
      case Functional::WeightedDirichlet:
        w[t] = 2.0 * (*phi_)(kernels::image_centroid(frames_, targets, t));
        break;
      case Functional::InverseEnergy:
      case Functional::MeanDistortion:
        w[t] = a > b ? std::pow((a + b) / (a - b), p_ - 1.0) : 1.0;
        break;
    }
  }
  return w;
}

}  // namespace hopfmin
