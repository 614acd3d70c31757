#include "dirac_lab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dirac_lab/errors.hpp"
#include "dirac_lab/spinor.hpp"

namespace dlab {

namespace {

constexpr double kDegenerateRel = 1e-12;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

bool degenerate(Vec2 e1, Vec2 e2) {
  return std::abs(cross(e1, e2)) < kDegenerateRel * norm(e1) * norm(e2);
}

// Checks (i)-(iii) on an explicit list of consecutive vertices.
void check_chain(const std::vector<Vec2>& v, long j0, double rho, std::vector<Violation>& out) {
  const long n = static_cast<long>(v.size());
  for (long k = 0; k + 1 < n; ++k) {
    if (v[k].x > v[k + 1].x)
      out.push_back({"i", {j0 + k, j0 + k + 1}, "v1 decreases: " + fmt(v[k].x) + " > " + fmt(v[k + 1].x)});
  }
  for (long k = 1; k + 1 < n; ++k) {
    const Vec2 e1 = v[k] - v[k - 1], e2 = v[k + 1] - v[k];
    if (degenerate(e1, e2))
      out.push_back({"ii", {j0 + k}, "consecutive edges are linearly dependent"});
  }
  for (long a = 0; a < n; ++a)
    for (long b = a + 1; b < n; ++b) {
      const double d = norm(v[a] - v[b]);
      if (!(d > 3 * rho))
        out.push_back({"iii", {j0 + a, j0 + b}, "distance " + fmt(d) + " <= 3 rho = " + fmt(3 * rho)});
    }
}

}  // namespace

void SectorDomain::check() const {
  if (!(rho > 0) || !std::isfinite(rho)) throw DomainError("sector radius must be positive");
  if (!(omega > 0 && omega < 2 * kPi)) throw DomainError("sector opening must lie in (0, 2pi)");
}

PolygonSpec PolygonSpec::from_motif(const std::vector<Vec2>& motif, Vec2 period, double rho, int copies,
                                    long j_min) {
  if (motif.empty() || copies < 1) throw InputError("periodic generator needs a motif and copies >= 1");
  PolygonSpec s;
  s.rho = rho;
  s.j_min = j_min;
  for (int c = 0; c < copies; ++c)
    for (const Vec2& p : motif) s.vertices.push_back(p + static_cast<double>(c) * period);
  s.periodic = Periodicity{period, static_cast<int>(motif.size())};
  return s;
}

std::vector<Violation> validate_polygon(const PolygonSpec& spec) {
  if (spec.vertices.size() < 3) throw InputError("polygon window needs at least 3 vertices");
  if (!(spec.rho > 0)) throw InputError("rho must be positive");
  std::vector<Violation> out;
  check_chain(spec.vertices, spec.j_min, spec.rho, out);

  if (spec.periodic) {
    // Certify on one period: motif against its translates.
    const Vec2 P = spec.periodic->period;
    const int m = spec.periodic->motif_size;
    if (m < 1 || m > static_cast<int>(spec.vertices.size()))
      throw InputError("periodic motif size out of range");
    if (!(P.x > 0)) out.push_back({"i", {}, "period must advance in x1"});
    std::vector<Vec2> motif(spec.vertices.begin(), spec.vertices.begin() + m);
    double diam = 0;
    for (auto& a : motif)
      for (auto& b : motif) diam = std::max(diam, norm(a - b));
    const double pl = norm(P);
    const long K = pl > 0 ? static_cast<long>(std::ceil((diam + 3 * spec.rho) / pl)) + 1 : 1;
    std::vector<Vec2> three;
    for (int c = -1; c <= 1; ++c)
      for (auto& p : motif) three.push_back(p + static_cast<double>(c) * P);
    std::vector<Violation> seam;
    check_chain(three, spec.j_min - m, spec.rho, seam);
    for (auto& v : seam)
      if (v.condition != "iii") out.push_back({v.condition, v.indices, "periodic seam: " + v.detail});
    for (int a = 0; a < m; ++a)
      for (long k = 1; k <= K; ++k)
        for (int b = 0; b < m; ++b) {
          const double d = norm(motif[a] - (motif[b] + static_cast<double>(k) * P));
          if (!(d > 3 * spec.rho))
            out.push_back({"iii", {spec.j_min + a, spec.j_min + b + k * m},
                           "periodic translate distance " + fmt(d) + " <= 3 rho"});
        }
  }
  return out;
}

double segment_constant(double omega) {
  if (!(omega > kPi && omega < 2 * kPi)) throw DomainError("segment constant needs omega in (pi, 2pi)");
  return omega <= 1.5 * kPi ? 0.5 : std::abs(std::sin(omega)) / 2;
}

CornerReport corner_report(const PolygonSpec& spec, long j) {
  if (j <= spec.j_min || j >= spec.j_max())
    throw RangeError("corner index " + std::to_string(j) + " is not interior to the window");
  const Vec2 v = spec.at(j);
  const Vec2 a = spec.at(j - 1) - v;  // towards previous vertex
  const Vec2 b = spec.at(j + 1) - v;  // towards next vertex
  if (degenerate(a, b)) throw DegeneracyError("corner " + std::to_string(j) + " is degenerate (collinear edges)");
  const double la = norm(a), lb = norm(b);
  const double c = std::clamp(dot(a, b) / (la * lb), -1.0, 1.0);
  const bool convex = cross(b, a) > 0;

  // Geometric cross-check: bisector of the smaller angle points into the domain iff convex.
  Vec2 u = (1.0 / la) * a + (1.0 / lb) * b;
  u = (1.0 / norm(u)) * u;
  const double eps = 1e-6 * std::min(la, lb);
  const bool inside = contains(spec, v + eps * u);
  if (inside != convex)
    throw DegeneracyError("corner " + std::to_string(j) + ": bisector probe disagrees with orientation test");

  CornerReport r;
  r.j = j;
  r.omega = convex ? std::acos(c) : 2 * kPi - std::acos(c);
  r.concave = !convex;
  r.sobolev_threshold = (kPi + r.omega) / (2 * r.omega);
  if (r.concave) {
    r.lambda = kPi / (2 * r.omega);
    r.s_const = segment_constant(r.omega);
  }
  return r;
}

std::vector<CornerReport> corner_reports(const PolygonSpec& spec) {
  std::vector<CornerReport> out;
  for (long j = spec.j_min + 1; j < spec.j_max(); ++j) out.push_back(corner_report(spec, j));
  return out;
}

double turning_angle(const PolygonSpec& spec, long j) {
  if (j <= spec.j_min || j >= spec.j_max()) throw RangeError("turning angle needs an interior index");
  const Vec2 d1 = spec.at(j) - spec.at(j - 1), d2 = spec.at(j + 1) - spec.at(j);
  return std::atan2(cross(d1, d2), dot(d1, d2));
}

double boundary_height(const PolygonSpec& spec, double x1) {
  const auto& v = spec.vertices;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (auto& p : v) {
    lo = std::min(lo, p.x);
    hi = std::max(hi, p.x);
  }
  if (!(x1 >= lo && x1 <= hi)) throw RangeError("x1 = " + fmt(x1) + " outside the window x-range");
  double h = -std::numeric_limits<double>::infinity();
  for (size_t k = 0; k + 1 < v.size(); ++k) {
    const Vec2 p = v[k], q = v[k + 1];
    if (p.x == q.x) continue;  // vertical edge
    const double a = std::min(p.x, q.x), b = std::max(p.x, q.x);
    if (x1 < a || x1 > b) continue;
    const double t = (x1 - p.x) / (q.x - p.x);
    h = std::max(h, p.y + t * (q.y - p.y));
  }
  if (!std::isfinite(h)) {
    // only vertical edges cover x1: use the top of them
    for (auto& p : v)
      if (p.x == x1) h = std::max(h, p.y);
  }
  return h;
}

bool contains(const PolygonSpec& spec, Vec2 x) { return x.y > boundary_height(spec, x.x); }

bool ball_inside(const PolygonSpec& spec, Vec2 c, double R) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (auto& p : spec.vertices) {
    lo = std::min(lo, p.x);
    hi = std::max(hi, p.x);
  }
  if (c.x - R < lo || c.x + R > hi) return false;
  if (!contains(spec, c)) return false;
  const auto& v = spec.vertices;
  for (size_t k = 0; k + 1 < v.size(); ++k) {
    const Vec2 p = v[k], d = v[k + 1] - v[k];
    const double L2 = dot(d, d);
    double t = L2 > 0 ? dot(c - p, d) / L2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    if (norm(c - (p + t * d)) < R) return false;
  }
  return true;
}

SectorDomain corner_sector(const PolygonSpec& spec, long j) {
  const CornerReport r = corner_report(spec, j);
  const Vec2 b = spec.at(j + 1) - spec.at(j);
  SectorDomain d;
  d.rho = spec.rho;
  d.omega = r.omega;
  d.origin = spec.at(j);
  d.rotation = std::atan2(b.y, b.x);
  return d;
}

}  // namespace dlab
