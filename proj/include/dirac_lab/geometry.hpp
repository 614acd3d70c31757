#pragma once
#include <optional>
#include <string>
#include <vector>

#include "dirac_lab/sector.hpp"

namespace dlab {

struct Periodicity {
  Vec2 period;
  int motif_size = 0;  // vertices per period at the start of the window
};

// Finite window v^(j_min), ..., v^(j_min+n-1) of an infinite polygon.
struct PolygonSpec {
  std::vector<Vec2> vertices;
  double rho = 0.0;
  long j_min = 0;
  std::optional<Periodicity> periodic;

  long j_max() const { return j_min + static_cast<long>(vertices.size()) - 1; }
  const Vec2& at(long j) const { return vertices.at(static_cast<size_t>(j - j_min)); }

  // Repeat a motif `copies` times along `period`.
  static PolygonSpec from_motif(const std::vector<Vec2>& motif, Vec2 period, double rho, int copies,
                                long j_min = 0);
};

struct Violation {
  std::string condition;  // "i", "ii" or "iii"
  std::vector<long> indices;
  std::string detail;
};

std::vector<Violation> validate_polygon(const PolygonSpec& spec);

struct CornerReport {
  long j = 0;
  double omega = 0;
  bool concave = false;
  std::optional<double> lambda;   // concave only
  std::optional<double> s_const;  // concave only
  double sobolev_threshold = 0;
};

// S constant of the segment lemma for a concave opening.
double segment_constant(double omega);

CornerReport corner_report(const PolygonSpec& spec, long j);
std::vector<CornerReport> corner_reports(const PolygonSpec& spec);

// Signed angle from v^j - v^(j-1) to v^(j+1) - v^j.
double turning_angle(const PolygonSpec& spec, long j);

double boundary_height(const PolygonSpec& spec, double x1);
bool contains(const PolygonSpec& spec, Vec2 x);
bool ball_inside(const PolygonSpec& spec, Vec2 center, double radius);

// Local sector Omega cap B_rho(v^j), theta measured from the outgoing edge.
SectorDomain corner_sector(const PolygonSpec& spec, long j);

}  // namespace dlab
