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

#include "hopfmin/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace hopfmin::svg {

namespace {

constexpr double kCanvas = 800.0, kMargin = 20.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Frame {
  double x0 = 0, y0 = 0, scale = 1;

  explicit Frame(const std::vector<Point>& pts) {
    if (pts.empty()) return;
    double x1 = -1e300, y1 = -1e300;
    x0 = y0 = 1e300;
    for (const auto& p : pts) {
      x0 = std::min(x0, p.real()), x1 = std::max(x1, p.real());
      y0 = std::min(y0, p.imag()), y1 = std::max(y1, p.imag());
    }
    const double span = std::max({x1 - x0, y1 - y0, 1e-12});
    scale = (kCanvas - 2 * kMargin) / span;
    top = y1;
  }
  double top = 0;
  std::string xy(Point p) const {
    return num(kMargin + (p.real() - x0) * scale) + "," + num(kMargin + (top - p.imag()) * scale);
  }
};

std::string header(const std::string& style) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n"
         "<style>" + style + "</style>\n<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
}

std::string empty(const std::string& what) {
  return header("") + "<text x=\"400\" y=\"400\" text-anchor=\"middle\">empty " + what + "</text>\n</svg>\n";
}

void polygon(std::ostringstream& os, const Frame& f, const std::vector<Point>& pts, const std::string& cls,
             const std::string& extra = "") {
  os << "<polygon class=\"" << cls << "\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? " " : "") << f.xy(pts[i]);
  os << "\"" << extra << "/>\n";
}

}  // namespace

std::string mesh(const TriangleMesh& m) {
  if (m.triangles.empty()) return empty("mesh");
  const Frame f(m.vertices);
  std::ostringstream os;
  os << header(".tri{fill:none;stroke:#333;stroke-width:0.5}");
  os << "<g id=\"mesh\" data-triangles=\"" << m.num_triangles() << "\">\n";
  for (const Tri& t : m.triangles) polygon(os, f, {m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]}, "tri");
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string map(const DiscreteMap& m, const std::optional<Domain>& target) {
  if (m.reference->triangles.empty()) return empty("map");
  std::vector<Point> all = m.targets;
  if (target) all.insert(all.end(), target->vertices.begin(), target->vertices.end());
  const Frame f(all);
  const auto d = derivatives(m);
  std::ostringstream os;
  os << header(".tri{fill:none;stroke:#335;stroke-width:0.5}.flipped{fill:#e33;stroke:#900;stroke-width:0.8}"
               ".outline{fill:none;stroke:#0a0;stroke-width:2}.exterior{fill:#d00}");
  if (target) polygon(os, f, target->vertices, "outline");
  os << "<g id=\"map\" data-triangles=\"" << m.reference->num_triangles() << "\">\n";
  for (int t = 0; t < m.reference->num_triangles(); ++t) {
    const Tri& tr = m.reference->triangles[t];
    polygon(os, f, {m.targets[tr[0]], m.targets[tr[1]], m.targets[tr[2]]}, d[t].orientation_ok ? "tri" : "flipped");
  }
  os << "</g>\n";
  if (target) {
    os << "<g id=\"exterior\">\n";
    for (const auto& p : m.targets)
      if (winding_number(target->vertices, p) == 0 && target->boundary_distance(p) > 1e-12) {
        const auto xy = f.xy(p);
        const auto comma = xy.find(',');
        os << "<circle class=\"exterior\" cx=\"" << xy.substr(0, comma) << "\" cy=\"" << xy.substr(comma + 1)
           << "\" r=\"3\"/>\n";
      }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string hopf(const HopfField& field) {
  const TriangleMesh& m = *field.mesh;
  if (m.triangles.empty()) return empty("field");
  const Frame f(m.vertices);
  double mx = 0.0;
  for (const auto& v : field.phi) mx = std::max(mx, std::abs(v));
  std::ostringstream os;
  os << header(".cell{stroke:none}");
  os << "<g id=\"hopf\" data-max-abs=\"" << num(mx) << "\">\n";
  for (int t = 0; t < m.num_triangles(); ++t) {
    const Tri& tr = m.triangles[t];
    const double s = mx > 0 ? std::abs(field.phi[t]) / mx : 0.0;
    char col[16];
    std::snprintf(col, sizeof col, "#%02x%02x%02x", 200 + static_cast<int>(55 * s), static_cast<int>(200 * (1 - s)),
                  static_cast<int>(200 * (1 - s)));
    polygon(os, f, {m.vertices[tr[0]], m.vertices[tr[1]], m.vertices[tr[2]]}, "cell", std::string(" fill=\"") + col + "\"");
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string trajectories(const Domain& domain, const std::vector<Trajectory>& family) {
  if (family.empty()) return empty("trajectory family");
  const Frame f(domain.vertices);
  std::ostringstream os;
  os << header(".outline{fill:none;stroke:#000;stroke-width:1.5}.vertical{fill:none;stroke:#06c;stroke-width:1}"
               ".horizontal{fill:none;stroke:#c60;stroke-width:1}");
  polygon(os, f, domain.vertices, "outline");
  for (const auto& t : family) {
    os << "<polyline class=\"" << to_string(t.kind) << "\" points=\"";
    // Thin long polylines to at most ~2000 points for the drawing.
    const std::size_t stride = std::max<std::size_t>(1, t.points.size() / 2000);
    for (std::size_t i = 0; i < t.points.size(); i += stride) os << (i ? " " : "") << f.xy(t.points[i]);
    if ((t.points.size() - 1) % stride) os << " " << f.xy(t.points.back());
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace hopfmin::svg
