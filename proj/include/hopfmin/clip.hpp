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

#include <vector>

#include "hopfmin/types.hpp"

namespace hopfmin {

/// Sutherland-Hodgman: the part of `subject` inside the convex CCW polygon `clip`.
std::vector<Point> clip_convex(const std::vector<Point>& subject, const std::vector<Point>& clip);

/// Area-weighted centroid; the vertex mean for degenerate polygons.
Point polygon_centroid(const std::vector<Point>& poly);

}  // namespace hopfmin
