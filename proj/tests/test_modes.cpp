#include <doctest.h>

#include <cmath>
#include <random>

#include "dirac_lab/errors.hpp"
#include "dirac_lab/modes.hpp"
#include "dirac_lab/quadrature.hpp"
#include "dirac_lab/spectrum.hpp"
#include "dirac_lab/specfun.hpp"
#include "bump_fields.hpp"
#include "support.hpp"

using namespace dlab;

namespace {

const double kOmegas[] = {1.25 * kPi, 1.5 * kPi, 1.75 * kPi};

}  // namespace

TEST_SUITE("modes") {
  TEST_CASE("singular mode value at (0.25, 0)") {
    const SpinorField f = singular_mode(Sign::Plus, 1.5 * kPi, 1.0).field();
    const Spinor v = f.eval(0.25, 0.0);
    const double a = std::pow(0.25, -1.0 / 6) / std::sqrt(3 * kPi);
    CHECK(std::abs(v(0) - a) <= 1e-14);
    CHECK(std::abs(v(1) - a) <= 1e-14);
    CHECK(singular_mode(Sign::Plus, 1.5 * kPi, 1.0).lambda == doctest::Approx(1.0 / 3).epsilon(1e-15));
  }

  TEST_CASE("singular mode errors") {
    CHECK_THROWS_AS(singular_mode(Sign::Plus, kPi, 1.0), DomainError);
    CHECK_THROWS_AS(singular_mode(Sign::Minus, 0.5 * kPi, 1.0), DomainError);
    CHECK_THROWS_AS(singular_mode(Sign::Plus, 2 * kPi, 1.0), DomainError);
    CHECK_THROWS_AS(singular_mode(Sign::Plus, 1.5 * kPi, 0.0), DomainError);
  }

  TEST_CASE("dirac image vanishes inside rho/2 and matches finite differences") {
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> U(0, 1);
    for (double omega : kOmegas)
      for (Sign sg : {Sign::Plus, Sign::Minus}) {
        const SpinorField f = singular_mode(sg, omega, 1.3).field();
        for (int i = 0; i < 20; ++i) {
          const double th = omega * (0.05 + 0.9 * U(rng));
          CHECK(f.dirac_eval(0.65 * U(rng), th).norm() == 0.0);
          const double r = 1.3 * (0.52 + 0.46 * U(rng));
          const Spinor a = f.dirac_eval(r, th), b = f.dirac_fd(r, th);
          CHECK((a - b).norm() <= 1e-5 * std::max(1.0, a.norm()));
        }
      }
  }

  TEST_CASE("mass term is exact sigma3 multiplication") {
    SpinorField f = singular_mode(Sign::Plus, 1.5 * kPi, 1.0).field();
    f.mass = 0.7;
    const Spinor d = f.dirac_eval(0.8, 1.0) - f.massless_dirac(0.8, 1.0);
    CHECK((d - 0.7 * sigma3() * f.eval(0.8, 1.0)).norm() <= 1e-15);
  }

  TEST_CASE("singular angular profiles orthonormal in L2(0,omega)") {
    for (double omega : kOmegas) {
      const SingularMode p = singular_mode(Sign::Plus, omega, 1), m = singular_mode(Sign::Minus, omega, 1);
      auto ip = [&](auto& a, auto& b) {
        return oracle::simpson([&](double t) { return b.angular(t).dot(a.angular(t)); }, 0, omega, 2000);
      };
      CHECK(std::abs(ip(p, p) - 1.0) <= 1e-10);
      CHECK(std::abs(ip(m, m) - 1.0) <= 1e-10);
      CHECK(std::abs(ip(p, m)) <= 1e-10);
    }
  }

  TEST_CASE("boundary condition residuals") {
    for (double omega : kOmegas)
      for (Sign sg : {Sign::Plus, Sign::Minus}) {
        const SpinorField f = singular_mode(sg, omega, 1).field();
        CHECK(boundary_condition_residual(f, f.support, 200) < 1e-10);
      }
    // generic constant spinor on the upper half-plane edge theta = 0, n = (0,-1)
    const double r = boundary_condition_residual({{Spinor(1, 0), {0, -1}}});
    const Spinor want = -kI * (sigma3() * (-sigma2() * Spinor(1, 0)));
    CHECK(r == doctest::Approx((want - Spinor(1, 0)).norm()));
    CHECK(r > 0.5);
    // the transverse eigenfunctions, u2(+-1) = +-i u1(+-1) is the same condition with n = (+-1, 0)
    for (double m : {0.0, 1.0, 5.0})
      for (Sign sg : {Sign::Plus, Sign::Minus}) {
        const TransverseMode t = transverse_eigenmode(m, sg);
        const Spinor a = t.eval(1.0), b = t.eval(-1.0);
        CHECK(boundary_condition_residual({{a, {1, 0}}, {b, {-1, 0}}}) < 1e-10);
        CHECK(std::abs(a(1) - kI * a(0)) < 1e-10);
        CHECK(std::abs(b(1) + kI * b(0)) < 1e-10);
      }
  }

  TEST_CASE("spin-orbit Gram matrix is the identity") {
    for (double omega : {0.7, kPi, 1.5 * kPi, 2 * kPi}) {
      std::vector<SpinOrbitMode> b;
      for (int k = 0; k < 3; ++k)
        for (Sign s : {Sign::Plus, Sign::Minus}) b.push_back(spin_orbit_mode(k, s, omega));
      Eigen::MatrixXcd G(6, 6);
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
          auto q = integrate_1d([&](double t) { return b[j].profile(t).dot(b[i].profile(t)); }, 0.0, omega,
                                QuadOptions{1e-14, 1e-13, 40, 2000});
          G(i, j) = q.value;
        }
      CHECK((G - Eigen::MatrixXcd::Identity(6, 6)).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }

  TEST_CASE("spin-orbit eigen, flip and boundary relations") {
    for (double omega : {0.7, kPi, 1.5 * kPi, 1.75 * kPi, 2 * kPi})
      for (int k = 0; k <= 5; ++k) {
        const SpinOrbitMode p = spin_orbit_mode(k, Sign::Plus, omega), m = spin_orbit_mode(k, Sign::Minus, omega);
        CHECK(p.tau == doctest::Approx((2 * k + 1) * kPi / (2 * omega)));
        for (int i = 0; i < 100; ++i) {
          const double t = omega * i / 99.0;
          // derivative by central differences as a second route
          const double h = 1e-5;
          const double a = p.tau + 0.5;  // largest frequency; stencil error ~ h^2 a^3 / (6 sqrt(omega)), here with margin 2
          CHECK((p.dprofile(t) - (p.profile(t + h) - p.profile(t - h)) / (2 * h)).norm() <= h * h * a * a * a / (3 * std::sqrt(omega)) + 1e-9);
          CHECK((m.dprofile(t) - (m.profile(t + h) - m.profile(t - h)) / (2 * h)).norm() <= h * h * a * a * a / (3 * std::sqrt(omega)) + 1e-9);
          CHECK((spin_orbit_apply(p, t) - p.tau * p.profile(t)).norm() <= 1e-10);
          CHECK((spin_orbit_apply(m, t) + m.tau * m.profile(t)).norm() <= 1e-10);
          const Mat2 er = -kI * sigma_dot(std::cos(t), std::sin(t));
          CHECK((er * p.profile(t) - m.profile(t)).norm() <= 1e-10);
          CHECK((er * m.profile(t) + p.profile(t)).norm() <= 1e-10);
        }
        for (const auto& f : {p, m}) {
          const Spinor a = f.profile(0), b = f.profile(omega);
          CHECK(std::abs(a(1) - a(0)) <= 1e-12);
          CHECK(std::abs(b(1) + std::polar(1.0, omega) * b(0)) <= 1e-12);
        }
      }
  }

  TEST_CASE("K_omega eigenvalues separated by pi/omega") {
    for (double omega : {0.7, 1.5 * kPi, 2 * kPi}) {
      std::vector<double> ev;
      for (int k = 0; k <= 5; ++k)
        for (Sign s : {Sign::Plus, Sign::Minus}) ev.push_back(spin_orbit_mode(k, s, omega).eigenvalue());
      for (size_t i = 0; i < ev.size(); ++i)
        for (size_t j = i + 1; j < ev.size(); ++j) CHECK(std::abs(ev[i] - ev[j]) >= kPi / omega - 1e-12);
    }
  }

  TEST_CASE("dirac_apply_polar examples") {
    const double omega = 1.5 * kPi;
    const double tau = spin_orbit_mode(1, Sign::Plus, omega).tau;
    RadialFn up{[=](double r) { return cplx(std::pow(r, tau)); }, [=](double r) { return cplx(tau * std::pow(r, tau - 1)); }};
    auto [a, b] = dirac_apply_polar(up, RadialFn{}, 1, omega);
    for (double r : {0.1, 0.5, 2.0}) {
      CHECK(std::abs(a.value(r)) == 0.0);
      CHECK(std::abs(b.value(r)) <= 1e-14 * std::pow(r, tau - 1));
    }
    CHECK_THROWS_AS(b.value(0.0), DomainError);
    // u- = r^-tau chi, no closed-form derivative, so the stencil path is used
    const RadialFn chi = bump_profile(0.6, 0.3, 1.0);
    RadialFn um{[=](double r) { return std::pow(r, -tau) * chi.value(r); }, {}};
    auto [c, d] = dirac_apply_polar(RadialFn{}, um, 1, omega);
    for (double r : {0.35, 0.5, 0.6, 0.77}) {
      const cplx want = -chi.derivative(r) * std::pow(r, -tau);
      CHECK(std::abs(c.value(r) - want) <= 1e-8 * std::max(1.0, std::abs(want)));
      CHECK(std::abs(d.value(r)) == 0.0);
    }
  }

  TEST_CASE("mode expansion Dirac image matches Cartesian finite differences") {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> U(0, 1);
    for (double omega : kOmegas) {
      const ModeExpansion e = oracle::random_bump_field(rng, omega, 1.0);
      const SpinorField f = e.field();
      for (int i = 0; i < 20; ++i) {
        const double r = 0.15 + 0.8 * U(rng), t = omega * (0.02 + 0.96 * U(rng));
        const Spinor a = e.dirac(r, t), b = f.dirac_fd(r, t);
        CHECK((a - b).norm() <= 1e-4 * std::max(1.0, a.norm()));
      }
      CHECK(boundary_condition_residual(f, f.support, 300) < 1e-12);
    }
  }

  TEST_CASE("boundary identity and norm equality on bump fields") {
    std::mt19937 rng(2026);
    const double rho = 1.0;
    const double omegas[] = {0.5 * kPi, 1.25 * kPi, 1.5 * kPi, 1.75 * kPi, 0.9 * kPi};
    for (double omega : omegas) {
      const ModeExpansion e = oracle::random_bump_field(rng, omega, rho);
      const auto b = oracle::bump_identities(e);
      CHECK(b.converged);
      CHECK(b.boundary > 0);
      CHECK(std::abs(b.form - b.boundary) <= 1e-6 * (b.l2 + b.grad));
      CHECK(std::abs(std::sqrt(b.sigma_grad) - std::sqrt(b.grad)) <= 1e-6 * std::sqrt(b.grad));
    }
  }
}
