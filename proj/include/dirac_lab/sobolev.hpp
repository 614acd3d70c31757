#pragma once
#include <cstdint>
#include <vector>

#include "dirac_lab/coefficients.hpp"
#include "dirac_lab/gagliardo.hpp"
#include "dirac_lab/modes.hpp"

namespace dlab {

// Openings closer to 2pi than this are refused by the scans.
inline constexpr double kScanOmegaGap = 1e-2;

struct ScanOptions {
  int max_depth = 8;
  double tol = 1e-3;
  GagliardoOptions gagliardo{};
};

struct ScanPoint {
  double omega = 0;
  double s = 0;
  GrowthVerdict::Kind verdict = GrowthVerdict::Inconclusive;
  double value_or_growth = 0;  // extrapolated seminorm^2 (finite) or growth ratio
  int depth = 0;
  std::vector<double> partial;  // depth-wise partial values
  bool converged = false;
};

double sobolev_threshold(double omega);  // (pi + omega) / (2 omega)
std::vector<double> default_s_grid();  // 21 points in [0.5, 0.99]

std::vector<ScanPoint> regularity_scan(const SingularMode& mode, const std::vector<double>& s_grid,
                                       const ScanOptions& opt = {});

// Whether the closed segment [x, y] stays in the closed sector (vertex excluded
// only as an endpoint), tested on a dense parameter grid.
bool segment_in_sector(const SectorDomain& dom, Vec2 x, Vec2 y, int grid = 64);

// Samples pairs with |x-y| <= S|x| in the sector and counts segments leaving it.
// S <= 0 selects the segment constant of the opening.
long segment_inclusion_check(double omega, long n_samples, std::uint64_t seed, double S = -1.0, int grid = 64);

struct WeightedNorms {
  double g_norm = 0;        // sum |c_j|^2
  double g_tilde_norm = 0;  // sum |c_j|^2 / (omega_j - pi)
};

WeightedNorms weighted_l2_norms(const std::vector<cplx>& c, const std::vector<double>& omegas);
// Norms of the c^+ (Sign::Plus) or c^- family.
WeightedNorms weighted_l2_norms(const ModeCoefficients& coeffs, Sign which = Sign::Plus);
// Partial sums over the first 1..N entries.
std::vector<WeightedNorms> weighted_l2_partial_sums(const std::vector<cplx>& c, const std::vector<double>& omegas);

}  // namespace dlab

namespace dlab {

// Gagliardo cross-term between two corner fields with disjoint supports:
// 2 * int_{S_a} int_{S_b} |c_a f_a(x) - c_b f_b(y)|^2 / |x-y|^{2+2s} dy dx,
// each field given in its own sector's local frame.
struct CrossTermResult {
  double value = 0;
  double coarse_value = 0;  // same tensor rule before panel splitting
  double abs_error_estimate = 0;
  bool converged = false;
  double min_distance = 0;  // lower bound on |x-y| over the supports
  double bound = 0;         // 4 (pi/s) rho^{-2s} sum |c|^2 ||f||^2
  double bound_constant = 0;  // 4 (pi/s) rho^{-2s}
};

CrossTermResult gagliardo_cross_term(const SpinorField& fa, cplx ca, const SpinorField& fb, cplx cb, double s,
                                     double rel_tol = 1e-4, Exec exec = Exec::Parallel);

}  // namespace dlab
