#include "dirac_lab/extensions.hpp"

#include <cmath>
#include <map>
#include <random>

#include "dirac_lab/errors.hpp"
#include "dirac_lab/modes.hpp"
#include "dirac_lab/quadrature.hpp"

namespace dlab {

ExtensionParameter make_extension_parameter(const Eigen::MatrixXcd& U, const std::vector<double>& omegas) {
  if (U.rows() != U.cols() || U.rows() == 0) throw InputError("extension parameter: U must be square and non-empty");
  if (static_cast<size_t>(U.rows()) != omegas.size())
    throw InputError("extension parameter: U size does not match the truncation window");
  ExtensionParameter p;
  p.U = U;
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(U.rows(), U.cols());
  p.unitarity_error = (U.adjoint() * U - I).cwiseAbs().maxCoeff();
  if (!(p.unitarity_error <= kUnitarityTol))
    throw InputError("extension parameter: U fails unitarity at 1e-12 (not re-unitarized)");
  Eigen::VectorXd w(U.rows());
  p.min_gap_to_pi = INFINITY;
  for (Eigen::Index j = 0; j < U.rows(); ++j) {
    const double g = omegas[j] - kPi;
    if (!(g > 0)) throw DomainError("extension parameter: omega_j <= pi");
    p.min_gap_to_pi = std::min(p.min_gap_to_pi, g);
    w(j) = 1.0 / g;
  }
  const Eigen::MatrixXcd A = w.cwiseSqrt().asDiagonal() * U * w.cwiseSqrt().cwiseInverse().asDiagonal();
  p.g_tilde_gain = Eigen::JacobiSVD<Eigen::MatrixXcd>(A).singularValues()(0);
  return p;
}

GammaData gamma_maps(const ModeCoefficients& c) {
  c.check();
  const Eigen::Index n = static_cast<Eigen::Index>(c.size());
  GammaData g{Eigen::VectorXcd(n), Eigen::VectorXcd(n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    g.plus(j) = kI * c.c_plus[j];
    g.minus(j) = c.c_minus[j];
  }
  return g;
}

cplx inner(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
  // Eigen's dot is conjugate-linear in the first argument
  return v.dot(u);
}

cplx green_rhs(const GammaData& a, const GammaData& b) {
  if (a.plus.size() != b.plus.size()) throw InputError("green_rhs: window sizes differ");
  return inner(a.plus, b.minus) - inner(a.minus, b.plus);
}

GreenPairing green_pairing(const ModeCoefficients& a, const ModeCoefficients& b, double rho, double tol) {
  a.check();
  b.check();
  if (!(rho > 0)) throw DomainError("green_pairing: rho must be positive");
  std::map<long, size_t> ib;
  for (size_t j = 0; j < b.size(); ++j) ib[b.window[j]] = j;
  GreenPairing out;
  SectorQuadOptions o;
  o.radial = QuadOptions{tol, tol, 60, 4000};
  o.angular = QuadOptions{0.1 * tol, 0.1 * tol, 40, 2000};
  o.dyadic_levels = 0;  // D psi vanishes for r < rho/2
  o.radial_breaks = {0.5 * rho, 0.75 * rho};
  for (size_t ja = 0; ja < a.size(); ++ja) {
    auto it = ib.find(a.window[ja]);
    if (it == ib.end()) continue;
    const size_t jb = it->second;
    const double om = a.omegas[ja];
    if (std::abs(om - b.omegas[jb]) > 1e-14) throw InputError("green_pairing: corner opening differs between families");
    const SpinorField p = singular_mode(Sign::Plus, om, rho).field();
    const SpinorField m = singular_mode(Sign::Minus, om, rho).field();
    const cplx ap = a.c_plus[ja], am = a.c_minus[ja], bp = b.c_plus[jb], bm = b.c_minus[jb];
    auto f = [&](double r, double t) -> cplx {
      const Spinor pa = ap * p.eval(r, t) + am * m.eval(r, t);
      const Spinor pb = bp * p.eval(r, t) + bm * m.eval(r, t);
      const Spinor da = ap * p.dirac_eval(r, t) + am * m.dirac_eval(r, t);
      const Spinor db = bp * p.dirac_eval(r, t) + bm * m.dirac_eval(r, t);
      return pb.dot(da) - db.dot(pa);
    };
    const auto q = integrate_sector(f, p.support, o);
    out.lhs += q.value;
    out.lhs_error += q.abs_error_estimate;
    out.converged = out.converged && q.converged;
    out.rhs += kI * ap * std::conj(bm) + kI * am * std::conj(bp);
    out.lhs_closed += am * std::conj(bp) - ap * std::conj(bm);
  }
  out.lhs_rhs_diff = std::abs(out.lhs - out.rhs);
  out.lhs_closed_diff = std::abs(out.lhs - out.lhs_closed);
  return out;
}

double tu_membership_residual(const GammaData& g, const ExtensionParameter& p) {
  const Eigen::Index n = p.U.rows();
  if (g.plus.size() != n || g.minus.size() != n) throw InputError("T_U residual: window sizes differ");
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
  return (kI * (I - p.U) * g.plus - (I + p.U) * g.minus).norm();
}

double tu_membership_residual(const ModeCoefficients& c, const ExtensionParameter& p) {
  return tu_membership_residual(gamma_maps(c), p);
}

BoundaryData g_parametrization(const ExtensionParameter& p, const Eigen::VectorXcd& g, const ModeCoefficients& layout) {
  const Eigen::Index n = p.U.rows();
  if (g.size() != n || static_cast<Eigen::Index>(layout.size()) != n)
    throw InputError("g parametrization: window sizes differ");
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
  BoundaryData out;
  out.gamma.plus = (I + p.U) * g;
  out.gamma.minus = kI * (I - p.U) * g;
  out.coeffs = layout;
  for (Eigen::Index j = 0; j < n; ++j) {
    out.coeffs.c_plus[j] = -kI * out.gamma.plus(j);
    out.coeffs.c_minus[j] = out.gamma.minus(j);
  }
  return out;
}

Eigen::MatrixXcd pi_basis(const ExtensionParameter& p) {
  const Eigen::Index n = p.U.rows();
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd A(n, 2 * n);
  A << kI * (I - p.U), -(I + p.U);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > 1e-12 * sv(0)) ++rank;
  return svd.matrixV().rightCols(2 * n - rank);
}

Eigen::VectorXcd g_from_boundary(const ExtensionParameter& p, const GammaData& gamma, double* residual) {
  const Eigen::Index n = p.U.rows();
  if (gamma.plus.size() != n || gamma.minus.size() != n) throw InputError("g reconstruction: window sizes differ");
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd B(2 * n, n);
  B << I + p.U, kI * (I - p.U);
  Eigen::VectorXcd y(2 * n);
  y << gamma.plus, gamma.minus;
  const Eigen::VectorXcd g = B.colPivHouseholderQr().solve(y);
  if (residual) *residual = (B * g - y).norm();
  return g;
}

Eigen::MatrixXcd random_unitary(int n, std::uint64_t seed) {
  if (n <= 0) throw InputError("random_unitary: n must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0.0, 1.0);
  Eigen::MatrixXcd Z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Z(i, j) = cplx(N(rng), N(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
  Eigen::MatrixXcd Q = qr.householderQ();
  const Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) Q.col(j) *= R(j, j) / std::abs(R(j, j));
  return Q;
}

}  // namespace dlab
