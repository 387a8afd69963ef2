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
#include <memory>
#include <string>

#include "hopfmin/mapping.hpp"

namespace hopfmin {

/// A positive weight on the target domain, evaluated at image points.
class WeightFn {
 public:
  static WeightFn constant(double c);
  /// Closure with its gradient packed as d/dx + i d/dy.
  static WeightFn analytic(std::function<double(Point)> value, std::function<Complex(Point)> gradient,
                           std::string label);
  /// Piecewise-linear interpolation of per-vertex samples.
  static WeightFn vertex_samples(MeshPtr mesh, std::vector<double> values);
  /// K_f^(p-1), constant on each triangle of f's reference mesh.
  static WeightFn distortion_pullback(const DiscreteMap& f, double p);
  /// Text form used by config files and the CLI:
  ///   const:c        c
  ///   quad:a,b       a + b |w|^2
  ///   exp:a,b        exp(a Re w + b Im w)
  static WeightFn parse(const std::string& spec);

  double operator()(Point w) const;
  Complex gradient(Point w) const;
  bool is_constant() const { return constant_; }
  bool is_smooth() const { return smooth_; }
  const std::string& label() const { return label_; }

 private:
  std::function<double(Point)> value_;
  std::function<Complex(Point)> gradient_;
  std::string label_;
  bool constant_ = false;
  bool smooth_ = true;
};

}  // namespace hopfmin
