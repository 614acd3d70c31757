#pragma once
#include <cmath>

namespace dlab {

struct Vec2 {
  double x = 0, y = 0;
};
inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Local sector {(r cos t, r sin t): 0<r<rho, 0<t<omega}, placed in the plane
// by a rotation and then a translation to `origin`.
struct SectorDomain {
  double rho = 1.0;
  double omega = 0.5 * 3.14159265358979323846;
  Vec2 origin{};
  double rotation = 0.0;

  void check() const;  // throws DomainError
  Vec2 to_global(double r, double theta) const {
    const double a = theta + rotation;
    return {origin.x + r * std::cos(a), origin.y + r * std::sin(a)};
  }
  double area() const { return 0.5 * omega * rho * rho; }
};

}  // namespace dlab
