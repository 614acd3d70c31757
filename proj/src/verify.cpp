#include "dirac_lab/verify.hpp"

#include <cmath>

#include "dirac_lab/errors.hpp"
#include "dirac_lab/extensions.hpp"
#include "dirac_lab/modes.hpp"
#include "dirac_lab/quadrature.hpp"
#include "dirac_lab/sobolev.hpp"
#include "dirac_lab/specfun.hpp"
#include "dirac_lab/spectrum.hpp"

namespace dlab {

namespace {

CheckResult below(std::string suite, std::string name, double measured, double tol, std::string note = {}) {
  return {std::move(suite), std::move(name), measured, tol, measured <= tol, std::move(note)};
}

void identities(std::vector<CheckResult>& out, const Config& cfg) {
  const char* S = "identities";
  for (double w : {1.25, 1.5, 1.75}) {
    const double om = w * kPi;
    const ModeCoefficients p{{0}, {1.0}, {0.0}, {om}}, m{{0}, {0.0}, {1.0}, {om}};
    // <D phi+, phi-> = -1/2 and <D phi-, phi+> = +1/2 from the closed-form Dirac images
    const SpinorField fp = singular_mode(Sign::Plus, om, cfg.rho).field();
    const SpinorField fm = singular_mode(Sign::Minus, om, cfg.rho).field();
    SectorQuadOptions o;
    o.radial = QuadOptions{cfg.quad_tol, cfg.quad_tol, 60, 4000};
    o.angular = QuadOptions{0.1 * cfg.quad_tol, 0.1 * cfg.quad_tol, 40, 2000};
    o.dyadic_levels = 0;
    o.radial_breaks = {0.5 * cfg.rho, 0.75 * cfg.rho};
    auto pair = [&](const SpinorField& a, const SpinorField& b) {
      return integrate_sector([&](double r, double t) { return b.eval(r, t).dot(a.dirac_eval(r, t)); }, fp.support, o)
          .value;
    };
    const std::string tag = "omega=" + std::to_string(w).substr(0, 4) + "pi";
    out.push_back(below(S, "<D phi+, phi-> = -1/2, " + tag, std::abs(pair(fp, fm) + 0.5), cfg.green_tol));
    out.push_back(below(S, "<D phi-, phi+> = +1/2, " + tag, std::abs(pair(fm, fp) - 0.5), cfg.green_tol));
    out.push_back(below(S, "<D phi+, phi+> = 0, " + tag, std::abs(pair(fp, fp)), cfg.green_tol));
    out.push_back(below(S, "<D phi-, phi-> = 0, " + tag, std::abs(pair(fm, fm)), cfg.green_tol));
    const GreenPairing g = green_pairing(p, m, cfg.rho, cfg.quad_tol);
    out.push_back(below(S, "Green lhs vs closed form, " + tag, g.lhs_closed_diff, cfg.green_tol));
    out.push_back(below(S, "singular mode + boundary condition, " + tag,
                        boundary_condition_residual(fp, fp.support, 200), 1e-12));
    out.push_back(below(S, "singular mode - boundary condition, " + tag,
                        boundary_condition_residual(fm, fm.support, 200), 1e-12));
  }
  // transverse modes: eigen-relation and boundary conditions
  for (double mass : {0.0, 1.0, 5.0}) {
    double worst = 0, bc = 0;
    for (Sign sg : {Sign::Plus, Sign::Minus}) {
      const TransverseMode tm = transverse_eigenmode(mass, sg);
      for (int k = 0; k < 50; ++k) {
        const double t = -1 + 2 * (k + 0.5) / 50;
        worst = std::max(worst, (tm.apply_dtr(t) - sgn(sg) * tm.M * tm.eval(t)).norm());
      }
      for (double t : {-1.0, 1.0}) {
        const Spinor v = tm.eval(t);
        bc = std::max(bc, std::abs(v(1) - t * kI * v(0)));
      }
    }
    out.push_back(below(S, "transverse eigen-relation, m=" + std::to_string(mass).substr(0, 3), worst, 1e-10));
    out.push_back(below(S, "transverse boundary conditions, m=" + std::to_string(mass).substr(0, 3), bc, 1e-10));
  }
  // extension calculus
  double worst = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const std::vector<double> om{1.5 * kPi, 1.25 * kPi};
    const ExtensionParameter par = make_extension_parameter(random_unitary(2, cfg.seed + trial), om);
    Eigen::VectorXcd g = random_unitary(2, cfg.seed + 100 + trial).col(0);
    const ModeCoefficients layout{{0, 1}, {0.0, 0.0}, {0.0, 0.0}, om};
    worst = std::max(worst, tu_membership_residual(g_parametrization(par, g, layout).coeffs, par));
  }
  out.push_back(below(S, "g-parametrized data lies in D(T_U)", worst, cfg.member_tol));
}

void bessel(std::vector<CheckResult>& out) {
  const char* S = "bessel";
  const double j0 = bessel_first_zero(0.0);
  out.push_back(below(S, "j_{0,1}^2 = 5.78 +- 0.01", std::abs(j0 * j0 - 5.78), 0.01,
                      "j_{0,1}^2 = " + std::to_string(j0 * j0)));
  for (int k = 1; k <= 3; ++k) {
    const double jk = bessel_first_zero(k);
    CheckResult c{S, "j_{" + std::to_string(k) + ",1}^2 >= j_{0,1}^2 + k^2", jk * jk - j0 * j0 - k * k, 0, false, {}};
    c.pass = c.measured >= 0;
    out.push_back(c);
  }
  out.push_back(below(S, "j_{1/2,1} = pi", std::abs(bessel_first_zero(0.5) - kPi), 1e-10));
  double res = 0;
  for (double nu : {0.0, 0.25, 1.0 / 6, 2.5, 7.0, 20.0}) res = std::max(res, std::abs(bessel_j(nu, bessel_first_zero(nu))));
  out.push_back(below(S, "J_nu(j_{nu,1}) = 0", res, 1e-10));
}

void bounds(std::vector<CheckResult>& out, const Config& cfg) {
  const char* S = "bounds";
  double worst = INFINITY;
  for (double rho : {0.5, 1.0, 2.0})
    for (int i = 0; i < 50; ++i) {
      const double om = 2 * kPi * (i + 0.5) / 50;
      const LowerBound lb = sector_lower_bound(om, rho, cfg.k_max);
      worst = std::min(worst, lb.bound * rho / 2 - 1);
    }
  CheckResult c{S, "sector lower bound >= 2/rho (50 omegas, 3 rho)", worst, 0, worst >= 0,
                "min (bound*rho/2 - 1)"};
  out.push_back(c);
  double gres = 0;
  bool in = true;
  for (double m : {0.0, 0.5, 1.0, 2.0, 5.0}) {
    const GapResult g = transverse_gap(m);
    gres = std::max(gres, g.residual);
    in = in && g.E1 >= kPi * kPi / 16 && g.E1 < kPi * kPi / 4;
  }
  out.push_back(below(S, "gap equation residual on m grid", gres, 1e-10));
  out.push_back({S, "E1 in [pi^2/16, pi^2/4)", 0, 0, in, {}});
  for (double w : {1.25, 1.5, 1.75}) {
    const long v = segment_inclusion_check(w * kPi, cfg.segment_samples / 10, cfg.seed);
    out.push_back(below(S, "segment inclusion, omega=" + std::to_string(w).substr(0, 4) + "pi", double(v), 0));
  }
}

}  // namespace

std::vector<CheckResult> run_verify(const std::string& suite, const Config& cfg) {
  std::vector<CheckResult> out;
  const bool all = suite == "all";
  if (!all && suite != "identities" && suite != "bessel" && suite != "bounds")
    throw InputError("verify: suite must be identities, bessel, bounds or all");
  if (all || suite == "identities") identities(out, cfg);
  if (all || suite == "bessel") bessel(out);
  if (all || suite == "bounds") bounds(out, cfg);
  return out;
}

}  // namespace dlab
