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

#include "hopfmin/weight.hpp"

#include <cmath>
#include <sstream>

#include "hopfmin/locate.hpp"

namespace hopfmin {

WeightFn WeightFn::constant(double c) {
  if (!(c > 0)) throw ConfigError("weight: constant must be positive");
  WeightFn w;
  w.value_ = [c](Point) { return c; };
  w.gradient_ = [](Point) { return Complex(0.0, 0.0); };
  std::ostringstream os;
  os.precision(17);
  os << "const:" << c;
  w.label_ = os.str();
  w.constant_ = true;
  return w;
}

WeightFn WeightFn::analytic(std::function<double(Point)> value, std::function<Complex(Point)> gradient,
                            std::string label) {
  WeightFn w;
  w.value_ = std::move(value);
  w.gradient_ = std::move(gradient);
  w.label_ = std::move(label);
  return w;
}

WeightFn WeightFn::vertex_samples(MeshPtr mesh, std::vector<double> values) {
  if (values.size() != mesh->vertices.size()) throw ConfigError("weight: one sample per vertex required");
  auto loc = std::make_shared<PointLocator>(mesh);
  auto vals = std::make_shared<std::vector<double>>(std::move(values));
  WeightFn w;
  w.value_ = [loc, vals](Point p) {
    const auto l = loc->locate(p);
    if (!l) throw NumericalError("weight: point outside the sample mesh");
    const Tri& t = loc->mesh().triangles[l->triangle];
    return l->bary[0] * (*vals)[t[0]] + l->bary[1] * (*vals)[t[1]] + l->bary[2] * (*vals)[t[2]];
  };
  w.gradient_ = [loc, vals](Point p) {
    const auto l = loc->locate(p);
    if (!l) throw NumericalError("weight: point outside the sample mesh");
    const auto& M = loc->mesh();
    const Tri& t = M.triangles[l->triangle];
    const Point e1 = M.vertices[t[1]] - M.vertices[t[0]], e2 = M.vertices[t[2]] - M.vertices[t[0]];
    const double d1 = (*vals)[t[1]] - (*vals)[t[0]], d2 = (*vals)[t[2]] - (*vals)[t[0]];
    const double det = cross(e1, e2);
    // Solve g . e1 = d1, g . e2 = d2.
    const double gx = (d1 * e2.imag() - d2 * e1.imag()) / det;
    const double gy = (e1.real() * d2 - e2.real() * d1) / det;
    return Complex(gx, gy);
  };
  w.label_ = "vertex-samples";
  w.smooth_ = false;
  return w;
}

WeightFn WeightFn::distortion_pullback(const DiscreteMap& f, double p) {
  auto loc = std::make_shared<PointLocator>(f.reference);
  auto K = std::make_shared<std::vector<double>>();
  for (const auto& d : derivatives(f)) K->push_back(std::pow(d.K, p - 1.0));
  WeightFn w;
  w.value_ = [loc, K](Point q) {
    const auto l = loc->locate(q);
    if (!l) throw NumericalError("weight: point outside the pulled-back map's domain");
    return (*K)[l->triangle];
  };
  w.gradient_ = [](Point) { return Complex(0.0, 0.0); };
  std::ostringstream os;
  os.precision(17);
  os << "distortion-pullback:p=" << p;
  w.label_ = os.str();
  w.smooth_ = false;
  return w;
}

WeightFn WeightFn::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  std::vector<double> args;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        args.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw ConfigError("weight: bad number '" + item + "' in '" + spec + "'");
      }
    }
  }
  if (kind == "const" && args.size() == 1) return constant(args[0]);
  if (kind == "quad" && args.size() == 2) {
    const double a = args[0], b = args[1];
    return analytic([a, b](Point w) { return a + b * std::norm(w); },
                    [b](Point w) { return 2.0 * b * w; }, spec);
  }
  if (kind == "exp" && args.size() == 2) {
    const double a = args[0], b = args[1];
    return analytic([a, b](Point w) { return std::exp(a * w.real() + b * w.imag()); },
                    [a, b](Point w) { return std::exp(a * w.real() + b * w.imag()) * Complex(a, b); }, spec);
  }
  throw ConfigError("weight: unrecognised spec '" + spec + "'");
}

double WeightFn::operator()(Point w) const { return value_(w); }

Complex WeightFn::gradient(Point w) const { return gradient_(w); }

}  // namespace hopfmin
