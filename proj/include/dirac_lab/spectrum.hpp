#pragma once
#include <functional>
#include <string>

#include "dirac_lab/spinor.hpp"
#include "dirac_lab/modes.hpp"

namespace dlab {

struct GapResult {
  double m = 0;
  double E1 = 0;
  double threshold = 0;  // sqrt(m^2 + E1)
  double residual = 0;   // |m sin(2 sqrt E1) + sqrt E1 cos(2 sqrt E1)|
  int iterations = 0;
};

// m sin(2 sqrt E) + sqrt E cos(2 sqrt E)
double gap_function(double m, double E);
GapResult transverse_gap(double m);

// Phi^{+/-} on (-1,1), unit L^2 norm, D_tr Phi^{+/-} = +/- M Phi^{+/-}.
struct TransverseMode {
  double m = 0, E1 = 0, M = 0;
  Sign sign = Sign::Plus;
  double norm_const = 1;  // C in Phi = C (..)
  Spinor eval(double t) const;
  Spinor derivative(double t) const;  // closed form
  // (-i sigma1 d_t + m sigma3) Phi
  Spinor apply_dtr(double t) const;
};

TransverseMode transverse_eigenmode(double m, Sign sign);

enum class WeylKind { Plane, Strip };
WeylKind parse_weyl_kind(const std::string& s);
std::string to_string(WeylKind k);

struct WeylQuotient {
  WeylKind kind = WeylKind::Plane;
  double mu = 0, n = 0, m = 0;
  double analytic = 0;     // closed-form Rayleigh quotient
  double recomputed = 0;   // 2D quadrature of the truncated field
  double rel_diff = 0;
  double norm_sq = 0;      // ||psi_n||^2 from quadrature
  double residual_sq = 0;  // ||(D - mu) psi_n||^2 from quadrature
  bool converged = false;
};

// Plane: constant of the plane quotient, int r phi'^2 / int r phi^2.
double plane_weyl_constant();
// Strip: ||phi'||^2 / ||phi||^2 over (0,1).
double strip_weyl_constant();

// quad_tol: relative tolerance of the 2D recomputation; <= 0 skips it.
WeylQuotient weyl_quotient(WeylKind kind, double mu, double n, double m, double quad_tol = 1e-9);

double radial_ground_energy(double tau, double rho);

struct LowerBound {
  double omega = 0, rho = 0;
  double bound = 0;  // min sqrt(E_{+/-tau_k})
  int k_argmin = 0;
  Sign sign_argmin = Sign::Plus;
  int bessel_evaluations = 0;
};

LowerBound sector_lower_bound(double omega, double rho, int k_max);

}  // namespace dlab
