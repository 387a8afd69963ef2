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

#include "hopfmin/quaddiff.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace hopfmin {

namespace {

std::string where(Point z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

// Parses one term "c", "ci", "(a+bi)", "z", "c z^n", "c*z^n".
void parse_term(const std::string& term, double sign, std::vector<Complex>& coeffs, const std::string& text) {
  std::size_t i = 0;
  Complex c(1.0, 0.0);
  bool have_coef = false;
  auto bad = [&] { return ConfigError("quadratic differential: cannot parse '" + text + "'"); };
  if (i < term.size() && term[i] == '(') {
    const auto close = term.find(')', i);
    if (close == std::string::npos) throw bad();
    const auto inner = QuadraticDifferential::parse_polynomial(term.substr(i + 1, close - i - 1));
    if (inner.size() > 1) throw bad();
    c = inner.empty() ? Complex(0.0) : inner[0];
    have_coef = true;
    i = close + 1;
  } else if (i < term.size() && (std::isdigit(static_cast<unsigned char>(term[i])) || term[i] == '.')) {
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(term.substr(i), &used);
    } catch (const std::exception&) {
      throw bad();
    }
    i += used;
    c = v;
    have_coef = true;
  }
  if (i < term.size() && term[i] == 'i') {
    c *= Complex(0.0, 1.0);
    have_coef = true;
    ++i;
  }
  if (i < term.size() && term[i] == '*') ++i;
  int power = 0;
  if (i < term.size() && term[i] == 'z') {
    power = 1;
    ++i;
    if (i < term.size() && term[i] == '^') {
      ++i;
      std::size_t used = 0;
      try {
        power = std::stoi(term.substr(i), &used);
      } catch (const std::exception&) {
        throw bad();
      }
      if (power < 0) throw bad();
      i += used;
    }
  } else if (!have_coef) {
    throw bad();
  }
  if (i != term.size()) throw bad();
  if (static_cast<int>(coeffs.size()) <= power) coeffs.resize(power + 1, 0.0);
  coeffs[power] += sign * c;
}

Complex horner(const std::vector<Complex>& c, Point z) {
  Complex v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
  return v;
}

// Root of phi continued from `prev`.
Complex root_near(Complex phi, Complex prev) {
  const Complex r = std::sqrt(phi);
  return std::norm(r - prev) <= std::norm(r + prev) ? r : -r;
}

double signed_distance(const Domain& d, Point p) {
  const double dist = d.boundary_distance(p);
  return d.contains(p) ? dist : -dist;
}

struct Stepper {
  const QuadraticDifferential& qd;
  Complex c;  // i or 1
  double eps;

  enum Status { Ok, Critical, Flip };

  // Unit-metric direction at z, aligned with ref.
  Status direction(Point z, Complex ref, Complex& out) const {
    const Complex phi = qd(z);
    if (std::abs(phi) < eps) return Critical;
    Complex d = c / std::sqrt(phi);
    const double cosang = (d.real() * ref.real() + d.imag() * ref.imag()) / (std::abs(d) * std::abs(ref));
    if (std::abs(cosang) < 0.5) return Flip;
    out = cosang < 0 ? -d : d;
    return Ok;
  }

  // One RK4 step of metric length h.
  Status step(Point z, Complex ref, double h, Point& out, Complex& dir_out) const {
    Complex k1, k2, k3, k4;
    Status s;
    if ((s = direction(z, ref, k1)) != Ok) return s;
    if ((s = direction(z + 0.5 * h * k1, k1, k2)) != Ok) return s;
    if ((s = direction(z + 0.5 * h * k2, k1, k3)) != Ok) return s;
    if ((s = direction(z + h * k3, k1, k4)) != Ok) return s;
    out = z + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    // The endpoint itself must not sit across a zero.
    Complex k5;
    if ((s = direction(out, k4, k5)) == Flip) return s;
    dir_out = k4;
    return Ok;
  }
};

struct HalfTrace {
  std::vector<Point> points;  // excluding the start
  Termination termination = Termination::StepLimit;
  bool tangential = false;
};

HalfTrace trace_half(const QuadraticDifferential& qd, Point start, Complex c, Complex dir0, double h, int max_steps) {
  const Stepper st{qd, c, qd.critical_epsilon()};
  const Domain& D = qd.domain();
  HalfTrace out;
  Point z = start;
  Complex ref = dir0;
  const double h0 = h;
  for (int n = 0; n < max_steps; ++n) {
    Point next;
    Complex dir;
    const auto status = st.step(z, ref, h, next, dir);
    if (status == Stepper::Critical) {
      out.termination = Termination::CriticalPoint;
      return out;
    }
    if (status == Stepper::Flip) {
      // Metric steps overshoot near a zero; shrink and keep the smaller step.
      h *= 0.5;
      if (h < 1e-15 * h0) throw NumericalError("trace: direction field branch flip near " + where(z));
      --n;
      continue;
    }
    if (!D.contains(next)) {
      // Shorten the last step so that its endpoint lands on the boundary.
      double lo = 0.0, hi = h;
      Point pl = z;
      Complex dl = ref;
      for (int it = 0; it < 200 && hi - lo > 1e-17 * h; ++it) {
        const double mid = 0.5 * (lo + hi);
        Point pm;
        Complex dm;
        if (st.step(z, ref, mid, pm, dm) != Stepper::Ok) break;
        if (signed_distance(D, pm) > 0)
          lo = mid, pl = pm, dl = dm;
        else
          hi = mid;
      }
      Point pe;
      Complex de;
      if (st.step(z, ref, hi, pe, de) != Stepper::Ok) pe = pl, de = dl;
      out.points.push_back(pe);
      // Flag exits nearly tangent to the boundary.
      const std::vector<Point>& V = D.vertices;
      double best = 1e300;
      Point edge = 1.0;
      for (std::size_t k = 0; k < V.size(); ++k) {
        const Point a = V[k], b = V[(k + 1) % V.size()];
        const double t = std::clamp(dot(pe - a, b - a) / std::norm(b - a), 0.0, 1.0);
        const double d = std::abs(pe - (a + t * (b - a)));
        if (d < best) best = d, edge = b - a;
      }
      const double s = std::abs(cross(edge, de)) / (std::abs(edge) * std::abs(de));
      out.tangential = s < 0.05;
      out.termination = Termination::Boundary;
      return out;
    }
    if (std::abs(qd(next)) < st.eps) {
      out.points.push_back(next);
      out.termination = Termination::CriticalPoint;
      return out;
    }
    out.points.push_back(next);
    z = next;
    ref = dir;
  }
  out.termination = Termination::StepLimit;
  return out;
}

constexpr double kGL2 = 0.28867513459481287;  // 1/(2 sqrt 3)

}  // namespace

void QuadraticDifferential::finish() {
  double m = 0.0;
  const auto& V = domain_.vertices;
  for (std::size_t k = 0; k < V.size(); ++k)
    for (int j = 0; j < 8; ++j) m = std::max(m, std::abs(phi_(V[k] + (V[(k + 1) % V.size()] - V[k]) * (j / 8.0))));
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& p : V)
    x0 = std::min(x0, p.real()), x1 = std::max(x1, p.real()), y0 = std::min(y0, p.imag()), y1 = std::max(y1, p.imag());
  for (int i = 0; i <= 64; ++i)
    for (int j = 0; j <= 64; ++j) {
      const Point p(x0 + (x1 - x0) * i / 64.0, y0 + (y1 - y0) * j / 64.0);
      if (domain_.contains(p)) m = std::max(m, std::abs(phi_(p)));
    }
  max_abs_ = m;
}

QuadraticDifferential QuadraticDifferential::polynomial(std::vector<Complex> coeffs, Domain domain) {
  while (!coeffs.empty() && coeffs.back() == Complex(0.0)) coeffs.pop_back();
  if (coeffs.empty()) throw ConfigError("quadratic differential: phi is identically zero");
  QuadraticDifferential q;
  q.coeffs_ = coeffs;
  q.phi_ = [coeffs](Point z) { return horner(coeffs, z); };
  q.domain_ = std::move(domain);
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n > 0) {
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) C(i, n - 1) = -coeffs[i] / coeffs[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
    std::vector<Point> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(roots.begin(), roots.end(),
              [](Point a, Point b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
    for (const auto& r : roots)
      if (q.domain_.contains(r) || q.domain_.boundary_distance(r) < 1e-12) q.critical_.push_back(r);
  }
  q.finish();
  return q;
}

QuadraticDifferential QuadraticDifferential::analytic(std::function<Complex(Point)> phi, Domain domain,
                                                      std::vector<Point> critical_points) {
  QuadraticDifferential q;
  q.phi_ = std::move(phi);
  q.domain_ = std::move(domain);
  q.critical_ = std::move(critical_points);
  q.finish();
  return q;
}

std::vector<Complex> QuadraticDifferential::parse_polynomial(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ConfigError("quadratic differential: empty expression");
  std::vector<Complex> coeffs;
  int depth = 0;
  std::size_t begin = 0;
  double sign = 1.0;
  if (s[0] == '+' || s[0] == '-') sign = s[0] == '-' ? -1.0 : 1.0, begin = 1;
  for (std::size_t i = begin; i <= s.size(); ++i) {
    const char ch = i < s.size() ? s[i] : '\0';
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    // A sign after 'e' belongs to an exponent.
    const bool exponent = i > 0 && (s[i - 1] == 'e' || s[i - 1] == 'E');
    if (ch == '\0' || (depth == 0 && (ch == '+' || ch == '-') && i > begin && !exponent)) {
      parse_term(s.substr(begin, i - begin), sign, coeffs, text);
      if (ch == '\0') break;
      sign = ch == '-' ? -1.0 : 1.0;
      begin = i + 1;
    }
  }
  return coeffs;
}

std::string to_string(TrajectoryKind k) { return k == TrajectoryKind::Vertical ? "vertical" : "horizontal"; }

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Boundary: return "boundary";
    case Termination::CriticalPoint: return "critical-point";
    case Termination::StepLimit: return "step-limit";
  }
  return "?";
}

Trajectory trace(const QuadraticDifferential& qd, Point start, TrajectoryKind kind, double step, int max_steps) {
  if (!(step > 0)) throw ConfigError("trace: step must be positive");
  if (!qd.domain().contains(start)) throw ConfigError("trace: start " + where(start) + " is outside the domain");
  const Complex phi0 = qd(start);
  if (std::abs(phi0) < qd.critical_epsilon()) throw ConfigError("trace: start " + where(start) + " is critical");
  const Complex c = kind == TrajectoryKind::Vertical ? Complex(0.0, 1.0) : Complex(1.0, 0.0);
  const Complex d0 = c / std::sqrt(phi0);
  const auto fwd = trace_half(qd, start, c, d0, step, max_steps);
  const auto bwd = trace_half(qd, start, c, -d0, step, max_steps);
  Trajectory t;
  t.kind = kind;
  t.points.assign(bwd.points.rbegin(), bwd.points.rend());
  t.start_index = static_cast<int>(t.points.size());
  t.points.push_back(start);
  t.points.insert(t.points.end(), fwd.points.begin(), fwd.points.end());
  t.termination = {bwd.termination, fwd.termination};
  t.tangential_exit = {bwd.tangential, fwd.tangential};
  t.phi_length = phi_length(qd, t.points);
  return t;
}

double weighted_length(const QuadraticDifferential& qd, const std::vector<Point>& curve,
                       const std::function<double(Point)>& F) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < curve.size(); ++k) {
    const Point a = curve[k], b = curve[k + 1], m = 0.5 * (a + b), d = b - a;
    const Point x1 = m - kGL2 * d, x2 = m + kGL2 * d;
    const double g = std::sqrt(std::abs(qd(x1))) * (F ? F(x1) : 1.0) + std::sqrt(std::abs(qd(x2))) * (F ? F(x2) : 1.0);
    total += 0.5 * g * std::abs(d);
  }
  return total;
}

double phi_length(const QuadraticDifferential& qd, const std::vector<Point>& curve) {
  return weighted_length(qd, curve, nullptr);
}

std::vector<Complex> natural_parameter(const QuadraticDifferential& qd, const std::vector<Point>& curve) {
  static const double x[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
  static const double w[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  std::vector<Complex> zeta{0.0};
  if (curve.empty()) return {};
  Complex root = std::sqrt(qd(curve[0]));
  for (std::size_t k = 0; k + 1 < curve.size(); ++k) {
    const Point a = curve[k], b = curve[k + 1], m = 0.5 * (a + b), h = 0.5 * (b - a);
    Complex s = 0.0;
    for (int j = 0; j < 3; ++j) {
      root = root_near(qd(m + x[j] * h), root);
      s += w[j] * root;
    }
    root = root_near(qd(b), root);
    zeta.push_back(zeta.back() + s * h);
  }
  return zeta;
}

MinimalityRecord minimality_check(const QuadraticDifferential& qd, const Trajectory& traj, int competitors,
                                  std::uint64_t seed) {
  MinimalityRecord r;
  r.traj_length = phi_length(qd, traj.points);
  if (traj.points.size() < 2 || std::abs(traj.points.back() - traj.points.front()) < 1e-14) {
    r.degenerate = true;
    return r;
  }
  const Point a = traj.points.front(), b = traj.points.back();
  const Domain& D = qd.domain();
  const double amp_max = D.diameter() / 4.0;
  constexpr int kModes = 4, kSamples = 4000;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  r.min_competitor = std::numeric_limits<double>::infinity();
  const long max_draws = 10000L * std::max(1, competitors);
  long draws = 0;
  std::vector<Point> curve(kSamples + 1);
  while (r.competitors < competitors) {
    if (++draws > max_draws) throw NumericalError("minimality_check: could not draw competitors inside the domain");
    const double amp = amp_max * unit(rng);
    std::array<Complex, kModes> c;
    double wsum = 0.0;
    for (auto& ck : c) {
      ck = std::polar(unit(rng), 2.0 * M_PI * unit(rng));
      wsum += std::abs(ck);
    }
    bool inside = true;
    for (int k = 0; k <= kSamples && inside; ++k) {
      const double s = static_cast<double>(k) / kSamples;
      Point p = a + s * (b - a);
      for (int m = 0; m < kModes; ++m) p += amp / wsum * c[m] * std::sin((m + 1) * M_PI * s);
      curve[k] = p;
      if (k > 0 && k < kSamples && !D.contains(p)) inside = false;
    }
    if (!inside) {
      ++r.discarded;
      continue;
    }
    ++r.competitors;
    r.min_competitor = std::min(r.min_competitor, phi_length(qd, curve));
  }
  r.margin = r.min_competitor - r.traj_length;
  return r;
}

FubiniRecord fubini_check(const QuadraticDifferential& qd, const std::function<double(Point)>& F,
                          const std::function<double(Point)>& G, const TrajectoryFamily& fam) {
  if (!(fam.spacing > 0) || !(fam.step > 0)) throw ConfigError("fubini_check: spacing and step must be positive");
  // Cumulative Re zeta along the transversal on a fine table.
  constexpr int kTable = 20000;
  const Complex d = fam.b - fam.a;
  std::vector<Point> seg(kTable + 1);
  for (int k = 0; k <= kTable; ++k) seg[k] = fam.a + d * (static_cast<double>(k) / kTable);
  auto zeta = natural_parameter(qd, seg);
  if (zeta.back().real() < 0)
    for (auto& z : zeta) z = -z;
  const double Xi = zeta.back().real();
  for (int k = 1; k <= kTable; ++k)
    if (!(zeta[k].real() > zeta[k - 1].real()))
      throw ConfigError("fubini_check: transversal is not monotone in Re zeta");
  const int n = std::max(1, static_cast<int>(std::lround(Xi / fam.spacing)));
  FubiniRecord r;
  r.spacing = Xi / n;
  if (r.spacing > 2.0 * fam.spacing) throw NumericalError("fubini_check: family leaves gaps wider than 2 spacing");
  std::size_t j = 0;
  for (int k = 0; k < n; ++k) {
    const double xi = (k + 0.5) * r.spacing;
    while (j + 1 < zeta.size() && zeta[j + 1].real() < xi) ++j;
    const double lam = (xi - zeta[j].real()) / (zeta[j + 1].real() - zeta[j].real());
    const Point seed = seg[j] + lam * (seg[j + 1] - seg[j]);
    const auto t = trace(qd, seed, TrajectoryKind::Vertical, fam.step);
    if (t.termination[0] != Termination::Boundary || t.termination[1] != Termination::Boundary)
      throw NumericalError("fubini_check: trajectory through " + where(seed) +
                           " does not cross the domain; the family leaves uncovered gaps");
    LineComparison lc;
    lc.seed = seed;
    lc.line_F = weighted_length(qd, t.points, F);
    lc.line_G = weighted_length(qd, t.points, G);
    lc.holds = lc.line_F <= lc.line_G;
    r.lines.push_back(lc);
  }
  r.all_lines_hold = std::all_of(r.lines.begin(), r.lines.end(), [](const auto& l) { return l.holds; });
  for (const auto& l : r.lines) r.lines_lhs += r.spacing * l.line_F, r.lines_rhs += r.spacing * l.line_G;
  // Degree-4 six-point rule on a mesh of the domain.
  const TriangleMesh M = triangulate(qd.domain(), fam.quad_edge);
  static const double A1 = 0.445948490915965, B1 = 0.108103018168070, W1 = 0.223381589678011;
  static const double A2 = 0.091576213509771, B2 = 0.816847572980459, W2 = 0.109951743655322;
  static const double bary[6][3] = {{A1, A1, B1}, {A1, B1, A1}, {B1, A1, A1},
                                    {A2, A2, B2}, {A2, B2, A2}, {B2, A2, A2}};
  static const double wt[6] = {W1, W1, W1, W2, W2, W2};
  for (int t = 0; t < M.num_triangles(); ++t) {
    const Tri& tri = M.triangles[t];
    const double area = M.triangle_area(t);
    double sf = 0.0, sg = 0.0;
    for (int q = 0; q < 6; ++q) {
      const Point p = bary[q][0] * M.vertices[tri[0]] + bary[q][1] * M.vertices[tri[1]] + bary[q][2] * M.vertices[tri[2]];
      const double w = std::abs(qd(p));
      sf += wt[q] * w * F(p);
      sg += wt[q] * w * G(p);
    }
    r.domain_lhs += area * sf;
    r.domain_rhs += area * sg;
  }
  r.coverage_error = std::max(std::abs(r.lines_lhs - r.domain_lhs), std::abs(r.lines_rhs - r.domain_rhs));
  r.implication_holds = !r.all_lines_hold || r.domain_lhs <= r.domain_rhs + r.coverage_error;
  return r;
}

}  // namespace hopfmin
