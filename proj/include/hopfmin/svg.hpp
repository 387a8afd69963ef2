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

#include <optional>
#include <string>
#include <vector>

#include "hopfmin/hopf.hpp"
#include "hopfmin/mapping.hpp"
#include "hopfmin/quaddiff.hpp"

namespace hopfmin::svg {

/// 800 x 800 canvas, coordinates printed with 6 significant digits.
std::string mesh(const TriangleMesh& m);
/// Image wireframe over the target outline. Triangles with J <= 0 get class
/// "flipped"; vertices outside the outline get class "exterior".
std::string map(const DiscreteMap& m, const std::optional<Domain>& target);
/// |phi| per triangle as a grey-to-red fill on the reference mesh.
std::string hopf(const HopfField& field);
std::string trajectories(const Domain& domain, const std::vector<Trajectory>& family);

}  // namespace hopfmin::svg
