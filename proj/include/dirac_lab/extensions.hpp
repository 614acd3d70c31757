#pragma once
#include <cstdint>
#include <Eigen/Dense>

#include "dirac_lab/coefficients.hpp"

namespace dlab {

inline constexpr double kUnitarityTol = 1e-12;

struct ExtensionParameter {
  Eigen::MatrixXcd U;
  double unitarity_error = 0;  // max |U^* U - 1|
  // ||W^{1/2} U W^{-1/2}||_2 with W = diag(1/(omega_j - pi)): the finite-window
  // shadow of U(G~) in G~; always finite at finite truncation
  double g_tilde_gain = 0;
  double min_gap_to_pi = 0;  // min_j (omega_j - pi)
};

// Rejects (InputError) matrices that are not square or fail unitarity at 1e-12.
ExtensionParameter make_extension_parameter(const Eigen::MatrixXcd& U, const std::vector<double>& omegas);

struct GammaData {
  Eigen::VectorXcd plus, minus;
};

GammaData gamma_maps(const ModeCoefficients& c);

// <u, v> = sum u_j conj(v_j)
cplx inner(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v);

struct GreenPairing {
  cplx lhs;         // <D psi_a, psi_b> - <psi_a, D psi_b>, sector quadrature
  cplx rhs;         // <G+ a, G- b> - <G- a, G+ b>
  cplx lhs_closed;  // sum (c-_a conj c+_b - c+_a conj c-_b), from the mode pairings
  double lhs_error = 0;
  bool converged = true;
  double lhs_rhs_diff = 0;
  double lhs_closed_diff = 0;
};

// Corners matched by window index; indices present in only one family do not
// interact (disjoint supports).
GreenPairing green_pairing(const ModeCoefficients& a, const ModeCoefficients& b, double rho = 1.0,
                           double tol = 1e-11);

cplx green_rhs(const GammaData& a, const GammaData& b);

// ||i(1-U) G+ - (1+U) G-||
double tu_membership_residual(const ModeCoefficients& c, const ExtensionParameter& p);
double tu_membership_residual(const GammaData& g, const ExtensionParameter& p);

struct BoundaryData {
  GammaData gamma;
  ModeCoefficients coeffs;  // c+ = -i G+, c- = G-
};

BoundaryData g_parametrization(const ExtensionParameter& p, const Eigen::VectorXcd& g,
                               const ModeCoefficients& layout);

// Basis (2n x n, orthonormal columns) of Pi = {(G+, G-): i(1-U)G+ = (1+U)G-}.
Eigen::MatrixXcd pi_basis(const ExtensionParameter& p);

// Solves ((1+U); i(1-U)) g = (G+; G-) in least squares; returns g and the
// reconstruction residual.
Eigen::VectorXcd g_from_boundary(const ExtensionParameter& p, const GammaData& gamma, double* residual = nullptr);

// Haar-distributed unitary from QR of a complex Gaussian matrix.
Eigen::MatrixXcd random_unitary(int n, std::uint64_t seed);

}  // namespace dlab
