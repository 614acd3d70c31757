#pragma once
#include <string>
#include <vector>

#include "dirac_lab/modes.hpp"
#include "dirac_lab/quadrature.hpp"

namespace dlab {

enum class Exec { Serial, Parallel };

// Threads used by parallel kernels: DIRAC_LAB_THREADS if set, else the
// OpenMP default. Always 1 without OpenMP.
int kernel_threads();

struct GagliardoOptions {
  double rel_tol = 1e-3;        // per-shell target for the outer integral
  double inner_rel_tol = 1e-3;  // direction integral around x
  double t_rel_tol = 1e-4;      // 1D radial integrals along a ray
  int max_theta_level = 6;
  int max_r_panels = 8;
  double split = -1.0;  // S in |x-y| <= S|x|; <= 0 selects the segment constant
  Exec exec = Exec::Parallel;
};

struct InnerValue {
  double near = 0, far = 0;
  double abs_error = 0;
  bool converged = true;
  long evaluations = 0;
};

// int over the sector of |f(x)-f(y)|^2 / |x-y|^{2+2s} dy at a fixed local point x.
InnerValue gagliardo_inner(const SpinorField& f, const SectorDomain& dom, double s, double S, double r,
                           double theta, const GagliardoOptions& opt);

struct GagliardoShell {
  int depth = 0;
  double r_lo = 0, r_hi = 0;
  double value = 0, near = 0, far = 0;
  double abs_error = 0;
  bool converged = false;
  int theta_level = 0;
  int r_panels = 0;
  long nodes = 0;
};

// Outer x-integral over the shell r_lo < |x| < r_hi of the sector.
GagliardoShell gagliardo_shell(const SpinorField& f, const SectorDomain& dom, double s, double r_lo, double r_hi,
                               const GagliardoOptions& opt);

struct GrowthVerdict {
  enum Kind { Finite, Diverging, Inconclusive };
  Kind kind = Inconclusive;
  double ratio = 0;         // estimated per-depth growth factor of shell contributions
  double extrapolated = 0;  // partial sum plus geometric tail (finite only)
  double tail = 0;
  double tail_error = 0;  // sensitivity of the tail to the last ratio change
  std::string note;
};

const char* to_string(GrowthVerdict::Kind k);

// Divergence detector over dyadic shell contributions a_0..a_D.
GrowthVerdict classify_growth(const std::vector<double>& shell_values);

struct GagliardoResult : QuadratureResult<double> {
  std::vector<GagliardoShell> shells;
  std::vector<double> partial;  // sum of shells 0..d
  double near_total = 0, far_total = 0;
  GrowthVerdict verdict;
};

// Seminorm squared over dom x dom, shell d = {rho 2^-(d+1) < |x| < rho 2^-d},
// d = 0..max_depth.
GagliardoResult gagliardo_seminorm(const SpinorField& f, const SectorDomain& dom, double s, double tol,
                                   int max_depth, const GagliardoOptions& opt = {});

}  // namespace dlab
