#pragma once
#include <functional>
#include <utility>
#include <vector>

#include "dirac_lab/sector.hpp"
#include "dirac_lab/spinor.hpp"

namespace dlab {

// C^2 field on a sector, written in the sector's local frame and local polar
// coordinates (r, theta), theta in (0, omega).
struct SpinorField {
  std::function<Spinor(double, double)> eval;
  // massless part -i sigma.grad in closed form; left empty to fall back to
  // central differences
  std::function<Spinor(double, double)> massless_dirac;
  SectorDomain support;
  double mass = 0.0;

  // Image under -i sigma.grad + m sigma3.
  Spinor dirac_eval(double r, double theta) const;
  // Same image from a 5-point Cartesian stencil with step h (default 1e-4 rho).
  Spinor dirac_fd(double r, double theta, double h = 0.0) const;
};

enum class Sign { Plus = 1, Minus = -1 };
inline double sgn(Sign s) { return s == Sign::Plus ? 1.0 : -1.0; }

struct SingularMode {
  Sign sign;
  double lambda;
  double omega;
  double rho;
  Spinor angular(double theta) const;  // Phi^{+/-}(theta)
  SpinorField field() const;
};

SingularMode singular_mode(Sign sign, double omega, double rho);

struct SpinOrbitMode {
  int k;
  Sign sign;
  double omega;
  double tau;
  double eigenvalue() const { return sgn(sign) * tau; }
  Spinor profile(double theta) const;
  Spinor dprofile(double theta) const;  // d/dtheta, closed form
};

SpinOrbitMode spin_orbit_mode(int k, Sign sign, double omega);

// (1/2 - i sigma3 d/dtheta) applied to a mode, from the closed-form derivative.
Spinor spin_orbit_apply(const SpinOrbitMode& m, double theta);

// Complex radial function with optional closed-form derivative.
struct RadialFn {
  std::function<cplx(double)> f;
  std::function<cplx(double)> df;  // may be empty
  cplx value(double r) const { return f ? f(r) : cplx{}; }
  cplx derivative(double r) const;  // closed form or 5-point stencil
};

// ((-d_r - tau/r) u_minus, (d_r - tau/r) u_plus).
std::pair<RadialFn, RadialFn> dirac_apply_polar(const RadialFn& u_plus, const RadialFn& u_minus, int k,
                                                 double omega);

// psi = r^{-1/2} sum_k (u_k^+ f_k^+ + u_k^- f_k^-).
struct ModeExpansion {
  struct Term {
    int k;
    RadialFn u_plus, u_minus;
  };
  double omega;
  double rho;
  std::vector<Term> terms;

  Spinor eval(double r, double theta) const;
  Spinor dirac(double r, double theta) const;  // via dirac_apply_polar
  Spinor d_r(double r, double theta) const;
  Spinor d_theta(double r, double theta) const;
  SpinorField field() const;
};

// Smooth bump a * exp(-1/(1-z^2)), z = (r-c)/w, supported in (c-w, c+w).
RadialFn bump_profile(double center, double width, cplx amplitude);

struct BoundarySample {
  Spinor psi;
  Vec2 normal;  // outward unit normal
};

double boundary_condition_residual(const std::vector<BoundarySample>& samples);
double boundary_condition_residual(const SpinorField& f, const SectorDomain& dom, int n_samples);

}  // namespace dlab
