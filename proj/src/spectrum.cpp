#include "dirac_lab/spectrum.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>

#include "dirac_lab/errors.hpp"
#include "dirac_lab/quadrature.hpp"
#include "dirac_lab/specfun.hpp"

namespace dlab {

double gap_function(double m, double E) {
  const double a = std::sqrt(E);
  return m * std::sin(2 * a) + a * std::cos(2 * a);
}

GapResult transverse_gap(double m) {
  if (!(m >= 0) || !std::isfinite(m)) throw DomainError("transverse_gap: m must be finite and >= 0");
  const double lo = kPi * kPi / 16, hi = kPi * kPi / 4 - 1e-12;
  GapResult g;
  g.m = m;
  const double glo = gap_function(m, lo), ghi = gap_function(m, hi);
  if (std::abs(glo) <= 1e-15) {
    g.E1 = lo;  // m = 0: cos(2 sqrt E) = 0 at the left end
  } else {
    if (!(glo * ghi < 0)) throw NumericalError("transverse_gap: no sign change on [pi^2/16, pi^2/4)");
    boost::uintmax_t it = 200;
    auto f = [m](double E) { return gap_function(m, E); };
    auto tol = [](double a, double b) { return std::abs(a - b) <= 4e-16 * std::max(std::abs(a), std::abs(b)); };
    auto br = boost::math::tools::toms748_solve(f, lo, hi, glo, ghi, tol, it);
    g.iterations = static_cast<int>(it);
    const double ra = std::abs(f(br.first)), rb = std::abs(f(br.second));
    g.E1 = ra <= rb ? br.first : br.second;
  }
  g.residual = std::abs(gap_function(m, g.E1));
  g.threshold = std::sqrt(m * m + g.E1);
  if (g.residual > 1e-10) throw NumericalError("transverse_gap: residual above 1e-10");
  if (!(g.E1 >= lo && g.E1 < kPi * kPi / 4)) throw InvariantViolation("transverse_gap: E1 left [pi^2/16, pi^2/4)");
  return g;
}

namespace {

// unnormalized Phi^+ components and their t-derivatives
struct PlusRaw {
  cplx u1, u2, d1, d2;
};

PlusRaw plus_raw(double m, double E1, double M, double t) {
  const double a = std::sqrt(E1), s = std::sin((t + 1) * a), c = std::cos((t + 1) * a);
  const double p = (M + m) * s + a * c, q = (m - M) * s + a * c;
  const double dp = a * ((M + m) * c - a * s), dq = a * ((m - M) * c - a * s);
  return {p, -kI * q, dp, -kI * dq};
}

}  // namespace

Spinor TransverseMode::eval(double t) const {
  const PlusRaw r = plus_raw(m, E1, M, t);
  Spinor p(norm_const * r.u1, norm_const * r.u2);
  if (sign == Sign::Plus) return p;
  return Spinor(-p(1), p(0));  // -i sigma2 Phi^+
}

Spinor TransverseMode::derivative(double t) const {
  const PlusRaw r = plus_raw(m, E1, M, t);
  Spinor p(norm_const * r.d1, norm_const * r.d2);
  if (sign == Sign::Plus) return p;
  return Spinor(-p(1), p(0));
}

Spinor TransverseMode::apply_dtr(double t) const {
  const Spinor d = derivative(t), v = eval(t);
  return Spinor(-kI * d(1) + m * v(0), -kI * d(0) - m * v(1));
}

TransverseMode transverse_eigenmode(double m, Sign sign) {
  const GapResult g = transverse_gap(m);
  TransverseMode tm;
  tm.m = m;
  tm.E1 = g.E1;
  tm.M = g.threshold;
  tm.sign = sign;
  auto dens = [&](double t) {
    const PlusRaw r = plus_raw(m, g.E1, tm.M, t);
    return std::norm(r.u1) + std::norm(r.u2);
  };
  const auto q = integrate_1d(dens, -1.0, 1.0, QuadOptions{1e-300, 1e-13, 50, 2000});
  if (!q.converged) throw NumericalError("transverse_eigenmode: normalization quadrature did not converge");
  tm.norm_const = 1.0 / std::sqrt(q.value);
  return tm;
}

WeylKind parse_weyl_kind(const std::string& s) {
  if (s == "plane") return WeylKind::Plane;
  if (s == "strip") return WeylKind::Strip;
  throw InputError("weyl kind must be 'plane' or 'strip'");
}

std::string to_string(WeylKind k) { return k == WeylKind::Plane ? "plane" : "strip"; }

namespace {

const QuadOptions kTight{1e-300, 1e-13, 60, 4000};

double cutoff_integral(std::function<double(double)> f) {
  const auto q = integrate_1d(f, 0.0, 1.0, kTight, {0.5, 0.75});
  if (!q.converged) throw NumericalError("cutoff integral did not converge");
  return q.value;
}

// 5-point central derivatives of a Cartesian field
template <class F>
Spinor massless_fd(const F& psi, double x, double y, double h) {
  auto d5 = [&](double dx, double dy) -> Spinor {
    return (-psi(x + 2 * dx, y + 2 * dy) + 8.0 * psi(x + dx, y + dy) - 8.0 * psi(x - dx, y - dy) +
            psi(x - 2 * dx, y - 2 * dy)) /
           (12.0 * h);
  };
  return -kI * (sigma1() * d5(h, 0) + sigma2() * d5(0, h));
}

}  // namespace

double plane_weyl_constant() {
  const double a = cutoff_integral([](double r) { return r * std::pow(cutoff_eval(r).dphi, 2); });
  const double b = cutoff_integral([](double r) { return r * std::pow(cutoff_eval(r).phi, 2); });
  return a / b;
}

double strip_weyl_constant() {
  const double a = cutoff_integral([](double r) { return std::pow(cutoff_eval(r).dphi, 2); });
  const double b = cutoff_integral([](double r) { return std::pow(cutoff_eval(r).phi, 2); });
  return a / b;
}

WeylQuotient weyl_quotient(WeylKind kind, double mu, double n, double m, double quad_tol) {
  if (!(m >= 0)) throw DomainError("weyl_quotient: m must be >= 0");
  if (!(n >= 1)) throw DomainError("weyl_quotient: n must be >= 1");
  WeylQuotient w;
  w.kind = kind;
  w.mu = mu;
  w.n = n;
  w.m = m;
  const double amu = std::abs(mu);
  const double h = 1e-3 * n;

  if (kind == WeylKind::Plane) {
    if (amu < m) throw DomainError("weyl_quotient: |mu| < m lies in the gap of the free operator");
    w.analytic = plane_weyl_constant() / (n * n);
    if (quad_tol <= 0) return w;
    // plane wave along x2 with (k sigma2 + m sigma3) V = mu V
    const double k = std::sqrt(std::max(0.0, mu * mu - m * m));
    Spinor V(mu + m, kI * k);
    const Spinor V2(-kI * k, mu - m);
    if (V2.norm() > V.norm()) V = V2;
    V /= V.norm();
    auto psi = [&](double x, double y) -> Spinor {
      return V * (std::exp(kI * (k * y)) * cutoff(std::hypot(x, y) / n));
    };
    SectorQuadOptions o;
    o.radial = QuadOptions{1e-300, quad_tol, 60, 4000};
    o.angular = QuadOptions{1e-300, 0.1 * quad_tol, 40, 2000};
    o.dyadic_levels = 0;
    o.radial_breaks = {0.5 * n, 0.75 * n};
    double nrm = 0, res = 0;
    bool ok = true;
    for (double rot : {0.0, kPi}) {
      const SectorDomain half{n, kPi, {}, rot};
      auto f = [&](double r, double t) -> cplx {
        const Vec2 p = half.to_global(r, t);
        const Spinor v = psi(p.x, p.y);
        const Spinor d = massless_fd(psi, p.x, p.y, h) + m * sigma3_apply(v) - mu * v;
        return {v.squaredNorm(), d.squaredNorm()};
      };
      const auto q = integrate_sector(f, half, o);
      nrm += q.value.real();
      res += q.value.imag();
      ok = ok && q.converged;
    }
    w.norm_sq = nrm;
    w.residual_sq = res;
    w.recomputed = res / nrm;
    w.converged = ok;
  } else {
    const GapResult g = transverse_gap(m);
    const double M = g.threshold;
    if (amu < M) throw DomainError("weyl_quotient: |mu| below the strip threshold sqrt(m^2 + E1)");
    w.analytic = strip_weyl_constant() / (n * n);
    if (quad_tol <= 0) return w;
    const TransverseMode pp = transverse_eigenmode(m, Sign::Plus), pm = transverse_eigenmode(m, Sign::Minus);
    const double s = mu >= 0 ? 1.0 : -1.0;
    const double k = std::sqrt(std::max(0.0, mu * mu - M * M));
    const cplx a = std::sqrt(amu + s * M) / std::sqrt(2 * amu);
    const cplx b = kI * s * std::sqrt(std::max(0.0, amu - s * M)) / std::sqrt(2 * amu);
    const double c = 2 * n;  // support of the cutoff: |x2 - c| < n, inside x2 > 0
    auto psi = [&](double x1, double x2) -> Spinor {
      return (a * pp.eval(x1) + b * pm.eval(x1)) * (std::exp(kI * (k * x2)) * cutoff(std::abs(x2 - c) / n));
    };
    const QuadOptions inner{1e-300, 0.1 * quad_tol, 40, 2000}, outer{1e-300, quad_tol, 60, 4000};
    bool ok = true;
    auto row = [&](double x2) -> cplx {
      auto g1 = [&](double x1) -> cplx {
        const Spinor v = psi(x1, x2);
        const Spinor d = massless_fd(psi, x1, x2, h) + m * sigma3_apply(v) - mu * v;
        return {v.squaredNorm(), d.squaredNorm()};
      };
      const auto q = integrate_1d(g1, -1.0, 1.0, inner);
      ok = ok && q.converged;
      return q.value;
    };
    const auto q = integrate_1d(row, c - n, c + n, outer, {c - 0.75 * n, c - 0.5 * n, c, c + 0.5 * n, c + 0.75 * n});
    ok = ok && q.converged;
    w.norm_sq = q.value.real();
    w.residual_sq = q.value.imag();
    w.recomputed = w.residual_sq / w.norm_sq;
    w.converged = ok;
  }
  w.rel_diff = std::abs(w.recomputed - w.analytic) / std::abs(w.analytic);
  return w;
}

double radial_ground_energy(double tau, double rho) {
  if (!(rho > 0)) throw DomainError("radial_ground_energy: rho must be positive");
  if (std::abs(tau - 0.5) <= 1e-14) throw DomainError("radial_ground_energy: tau = 1/2 is excluded");
  const double j = bessel_first_zero(std::abs(tau - 0.5));
  return (j / rho) * (j / rho);
}

LowerBound sector_lower_bound(double omega, double rho, int k_max) {
  if (!(omega > 0 && omega <= 2 * kPi)) throw DomainError("sector_lower_bound: omega must lie in (0, 2pi]");
  if (!(rho > 0)) throw DomainError("sector_lower_bound: rho must be positive");
  if (k_max < 5) throw InputError("sector_lower_bound: k_max must be >= 5");
  struct Cand {
    double nu;
    int k;
    Sign sign;
  };
  std::vector<Cand> c;
  for (int k = 0; k <= k_max; ++k) {
    const double tau = (2 * k + 1) * kPi / (2 * omega);
    if (std::abs(tau - 0.5) <= 1e-14) throw DomainError("sector_lower_bound: tau_k = 1/2 (omega = pi) is excluded");
    c.push_back({std::abs(tau - 0.5), k, Sign::Plus});
    c.push_back({tau + 0.5, k, Sign::Minus});
  }
  std::stable_sort(c.begin(), c.end(), [](const Cand& a, const Cand& b) { return a.nu < b.nu; });
  LowerBound lb;
  lb.omega = omega;
  lb.rho = rho;
  double best = INFINITY;
  for (const Cand& x : c) {
    if (x.nu >= best) break;  // j_{nu,1} > nu, nothing further can win
    const double j = bessel_first_zero(x.nu);
    ++lb.bessel_evaluations;
    if (j < best) {
      best = j;
      lb.k_argmin = x.k;
      lb.sign_argmin = x.sign;
    }
  }
  lb.bound = best / rho;
  if (!(lb.bound >= 2.0 / rho)) throw InvariantViolation("sector_lower_bound: bound fell below 2/rho");
  return lb;
}

}  // namespace dlab
