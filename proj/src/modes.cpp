#include "dirac_lab/modes.hpp"

#include <cmath>

#include "dirac_lab/errors.hpp"
#include "dirac_lab/specfun.hpp"

namespace dlab {

namespace {

cplx expi(double a) { return {std::cos(a), std::sin(a)}; }

// Angular profiles shared by the singular modes and the spin-orbit basis.
Spinor plus_profile(double tau, double omega, double th) {
  const double c = 1.0 / std::sqrt(2.0 * omega);
  return Spinor(c * expi((tau - 0.5) * th), c * expi(-(tau - 0.5) * th));
}
Spinor minus_profile(double tau, double omega, double th) {
  const cplx c = -kI / std::sqrt(2.0 * omega);
  return Spinor(c * expi(-(tau + 0.5) * th), c * expi((tau + 0.5) * th));
}

}  // namespace

Spinor SpinorField::dirac_eval(double r, double theta) const {
  Spinor d = massless_dirac ? massless_dirac(r, theta) : dirac_fd(r, theta);
  if (mass != 0.0) d += mass * sigma3_apply(eval(r, theta));
  return d;
}

Spinor SpinorField::dirac_fd(double r, double theta, double h) const {
  if (h <= 0) h = 1e-4 * support.rho;
  const double x0 = r * std::cos(theta), y0 = r * std::sin(theta);
  // polar angle continued from theta, so stencils may cross theta = 0
  auto at = [&](double x, double y) {
    const double rr = std::hypot(x, y);
    const double th = theta + std::atan2(x0 * y - y0 * x, x0 * x + y0 * y);
    return eval(rr, th);
  };
  auto d5 = [&](double dx, double dy) -> Spinor {
    return (-at(x0 + 2 * dx, y0 + 2 * dy) + 8.0 * at(x0 + dx, y0 + dy) - 8.0 * at(x0 - dx, y0 - dy) +
            at(x0 - 2 * dx, y0 - 2 * dy)) /
           (12.0 * h);
  };
  const Spinor px = d5(h, 0), py = d5(0, h);
  Spinor out = sigma1() * px + sigma2() * py;
  return -kI * out;
}

Spinor SingularMode::angular(double th) const {
  return sign == Sign::Plus ? plus_profile(lambda, omega, th) : minus_profile(lambda, omega, th);
}

SingularMode singular_mode(Sign sign, double omega, double rho) {
  if (!(omega > kPi && omega < 2 * kPi)) throw DomainError("singular modes need a concave opening omega in (pi, 2pi)");
  if (!(rho > 0)) throw DomainError("rho must be positive");
  return SingularMode{sign, kPi / (2 * omega), omega, rho};
}

SpinorField SingularMode::field() const {
  SpinorField f;
  f.support = SectorDomain{rho, omega, {}, 0.0};
  const SingularMode m = *this;
  const double p = sgn(sign) * lambda - 0.5;
  f.eval = [m, p](double r, double th) -> Spinor {
    const double c = cutoff(r / m.rho);
    if (c == 0.0) return Spinor::Zero();
    return std::pow(r, p) * c * m.angular(th);
  };
  f.massless_dirac = [m, p](double r, double th) -> Spinor {
    const double dphi = cutoff_eval(r / m.rho).dphi;
    if (dphi == 0.0) return Spinor::Zero();
    const double a = std::pow(r, p) * dphi / m.rho;
    if (m.sign == Sign::Plus) return a * minus_profile(m.lambda, m.omega, th);
    return -a * plus_profile(m.lambda, m.omega, th);
  };
  return f;
}

SpinOrbitMode spin_orbit_mode(int k, Sign sign, double omega) {
  if (k < 0) throw DomainError("spin-orbit index must be nonnegative");
  if (!(omega > 0 && omega <= 2 * kPi)) throw DomainError("omega must lie in (0, 2pi]");
  return SpinOrbitMode{k, sign, omega, (2 * k + 1) * kPi / (2 * omega)};
}

Spinor SpinOrbitMode::profile(double th) const {
  return sign == Sign::Plus ? plus_profile(tau, omega, th) : minus_profile(tau, omega, th);
}

Spinor SpinOrbitMode::dprofile(double th) const {
  Spinor p = profile(th);
  if (sign == Sign::Plus) {
    p(0) *= kI * (tau - 0.5);
    p(1) *= -kI * (tau - 0.5);
  } else {
    p(0) *= -kI * (tau + 0.5);
    p(1) *= kI * (tau + 0.5);
  }
  return p;
}

Spinor spin_orbit_apply(const SpinOrbitMode& m, double th) {
  return 0.5 * m.profile(th) - kI * sigma3_apply(m.dprofile(th));
}

cplx RadialFn::derivative(double r) const {
  if (df) return df(r);
  const double h = 1e-4 * r;
  return (-f(r + 2 * h) + 8.0 * f(r + h) - 8.0 * f(r - h) + f(r - 2 * h)) / (12.0 * h);
}

std::pair<RadialFn, RadialFn> dirac_apply_polar(const RadialFn& u_plus, const RadialFn& u_minus, int k,
                                                 double omega) {
  const double tau = spin_orbit_mode(k, Sign::Plus, omega).tau;
  RadialFn first, second;
  first.f = [u_minus, tau](double r) -> cplx {
    if (!(r > 0)) throw DomainError("dirac_apply_polar evaluated at r <= 0");
    if (!u_minus.f) return {};
    return -u_minus.derivative(r) - tau / r * u_minus.value(r);
  };
  second.f = [u_plus, tau](double r) -> cplx {
    if (!(r > 0)) throw DomainError("dirac_apply_polar evaluated at r <= 0");
    if (!u_plus.f) return {};
    return u_plus.derivative(r) - tau / r * u_plus.value(r);
  };
  return {first, second};
}

Spinor ModeExpansion::eval(double r, double th) const {
  Spinor s = Spinor::Zero();
  for (const auto& t : terms) {
    const auto mp = spin_orbit_mode(t.k, Sign::Plus, omega);
    const auto mm = spin_orbit_mode(t.k, Sign::Minus, omega);
    s += t.u_plus.value(r) * mp.profile(th) + t.u_minus.value(r) * mm.profile(th);
  }
  return s / std::sqrt(r);
}

Spinor ModeExpansion::dirac(double r, double th) const {
  Spinor s = Spinor::Zero();
  for (const auto& t : terms) {
    const auto [a, b] = dirac_apply_polar(t.u_plus, t.u_minus, t.k, omega);
    s += a.value(r) * spin_orbit_mode(t.k, Sign::Plus, omega).profile(th) +
         b.value(r) * spin_orbit_mode(t.k, Sign::Minus, omega).profile(th);
  }
  return s / std::sqrt(r);
}

Spinor ModeExpansion::d_r(double r, double th) const {
  Spinor s = Spinor::Zero();
  const double q = 1.0 / std::sqrt(r);
  for (const auto& t : terms) {
    const auto mp = spin_orbit_mode(t.k, Sign::Plus, omega);
    const auto mm = spin_orbit_mode(t.k, Sign::Minus, omega);
    auto radial = [&](const RadialFn& u) { return u.f ? q * (u.derivative(r) - 0.5 * u.value(r) / r) : cplx{}; };
    s += radial(t.u_plus) * mp.profile(th) + radial(t.u_minus) * mm.profile(th);
  }
  return s;
}

Spinor ModeExpansion::d_theta(double r, double th) const {
  Spinor s = Spinor::Zero();
  for (const auto& t : terms) {
    const auto mp = spin_orbit_mode(t.k, Sign::Plus, omega);
    const auto mm = spin_orbit_mode(t.k, Sign::Minus, omega);
    s += t.u_plus.value(r) * mp.dprofile(th) + t.u_minus.value(r) * mm.dprofile(th);
  }
  return s / std::sqrt(r);
}

SpinorField ModeExpansion::field() const {
  SpinorField f;
  f.support = SectorDomain{rho, omega, {}, 0.0};
  const ModeExpansion e = *this;
  f.eval = [e](double r, double th) { return e.eval(r, th); };
  f.massless_dirac = [e](double r, double th) { return e.dirac(r, th); };
  return f;
}

RadialFn bump_profile(double c, double w, cplx amp) {
  RadialFn u;
  u.f = [=](double r) -> cplx {
    const double z = (r - c) / w;
    if (std::abs(z) >= 1) return {};
    return amp * std::exp(-1.0 / (1.0 - z * z));
  };
  u.df = [=](double r) -> cplx {
    const double z = (r - c) / w;
    if (std::abs(z) >= 1) return {};
    const double q = 1.0 - z * z;
    return amp * std::exp(-1.0 / q) * (-2.0 * z / (q * q)) / w;
  };
  return u;
}

double boundary_condition_residual(const std::vector<BoundarySample>& samples) {
  double worst = 0;
  for (const auto& s : samples) {
    const Spinor m = -kI * (sigma3() * (sigma_dot(s.normal.x, s.normal.y) * s.psi));
    worst = std::max(worst, (m - s.psi).norm() / std::max(1.0, s.psi.norm()));
  }
  return worst;
}

double boundary_condition_residual(const SpinorField& f, const SectorDomain& dom, int n) {
  std::vector<BoundarySample> s;
  const Vec2 n0{0.0, -1.0}, n1{-std::sin(dom.omega), std::cos(dom.omega)};
  for (int i = 0; i < n; ++i) {
    const double r = dom.rho * (i + 0.5) / n;
    s.push_back({f.eval(r, 0.0), n0});
    s.push_back({f.eval(r, dom.omega), n1});
  }
  return boundary_condition_residual(s);
}

}  // namespace dlab
