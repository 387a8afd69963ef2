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
#include <complex>
#include <stdexcept>
#include <string>

namespace hopfmin {

/// Points of the plane are complex numbers; Wirtinger calculus needs nothing else.
using Point = std::complex<double>;
using Complex = std::complex<double>;
using Tri = std::array<int, 3>;

inline double cross(Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); }
inline double dot(Point a, Point b) { return a.real() * b.real() + a.imag() * b.imag(); }
inline double orient(Point a, Point b, Point c) { return cross(b - a, c - a); }

// Error families. The CLI maps each family to its own exit status.

/// Malformed input: bad parameters, contract violations of the caller.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation could not produce a valid result (singular system,
/// non-invertible map, point outside a mesh, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hopfmin
