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

#include <string>

#include <json.hpp>

#include "hopfmin/energy.hpp"
#include "hopfmin/hopf.hpp"
#include "hopfmin/optimize.hpp"
#include "hopfmin/quaddiff.hpp"
#include "hopfmin/smooth_map.hpp"

namespace hopfmin::io {

using json = nlohmann::ordered_json;

json point(Point p);
Point point_from(const json& j);

json to_json(const Domain& d);
Domain domain_from_json(const json& j);
json to_json(const TriangleMesh& m);
TriangleMesh mesh_from_json(const json& j);
json to_json(const DiscreteMap& m);
DiscreteMap map_from_json(const json& j);
json to_json(const BoundaryMap& b);

/// Boundary-map specs:
///   {"kind": "samples", "samples": [{"s": s, "w": [x, y]}, ...]}
///   {"kind": "reparam", "n": 256, "shift": 0, "modes": [[k, amplitude], ...]}
///       s -> target.point_at(shift + s + sum amplitude sin(2 pi k s))
///   {"kind": "affine", "n": 256, "a": [re, im], "b": [re, im], "c": [re, im]}
///       s -> a z + b conj(z) + c with z = source.point_at(s); must land on the target
///   {"kind": "choquet", "n": 400}
BoundaryMap boundary_from_json(const json& j, const Domain& source, const Domain& target);

Problem problem_from_json(const json& j);

/// Map specs for pairs: {"affine": {"a", "b", "c"}} or
/// {"smooth": {"seed", "bumps", "strength", "affine": {...}}}.
SmoothMap smooth_map_from_json(const json& j, const Domain& support);

json to_json(const EnergyBreakdown& e, bool per_triangle = false);
json to_json(const SolveReport& r);
json to_json(const UniquenessReport& u);
json to_json(const IdentityRecord& r);
json to_json(const ResidualReport& r, bool per_vertex = false);
json to_json(const HVReport& r);
json to_json(const HolderRecord& r);
json to_json(const Trajectory& t);
json to_json(const MinimalityRecord& r);
json to_json(const FubiniRecord& r);
json to_json(const EquivalenceReport& r);

/// Parses a JSON file; // and /* */ comments are allowed.
json read_file(const std::string& path);
/// Deterministic text: two-space indent, shortest round-trip doubles.
std::string dump(const json& j);
void write_file(const std::string& path, const std::string& text);

}  // namespace hopfmin::io
