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

#include "hopfmin/clip.hpp"

#include "hopfmin/geometry.hpp"

namespace hopfmin {

std::vector<Point> clip_convex(const std::vector<Point>& subject, const std::vector<Point>& clip) {
  std::vector<Point> out = subject;
  const std::size_t m = clip.size();
  for (std::size_t e = 0; e < m && !out.empty(); ++e) {
    const Point a = clip[e], b = clip[(e + 1) % m];
    const std::vector<Point> in = std::move(out);
    out.clear();
    auto side = [&](Point p) { return cross(b - a, p - a); };
    for (std::size_t i = 0; i < in.size(); ++i) {
      const Point p = in[i], q = in[(i + 1) % in.size()];
      const double sp = side(p), sq = side(q);
      if (sp >= 0) out.push_back(p);
      if ((sp >= 0) != (sq >= 0)) out.push_back(p + (q - p) * (sp / (sp - sq)));
    }
  }
  return out;
}

Point polygon_centroid(const std::vector<Point>& poly) {
  double a2 = 0.0;
  Point c = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point p = poly[i], q = poly[(i + 1) % poly.size()];
    const double w = cross(p, q);
    a2 += w;
    c += (p + q) * w;
  }
  if (std::abs(a2) < 1e-300) {
    Point m = 0.0;
    for (const auto& p : poly) m += p;
    return poly.empty() ? m : m / static_cast<double>(poly.size());
  }
  return c / (3.0 * a2);
}

}  // namespace hopfmin
