#include <doctest.h>

#include <cmath>
#include <random>

#include "dirac_lab/errors.hpp"
#include "dirac_lab/spectrum.hpp"
#include "dirac_lab/specfun.hpp"
#include "support.hpp"

using namespace dlab;

namespace {

constexpr double kLo = kPi * kPi / 16, kHi = kPi * kPi / 4;

double g_oracle(double m, double E) { return m * std::sin(2 * std::sqrt(E)) + std::sqrt(E) * std::cos(2 * std::sqrt(E)); }

// first zero of std::cyl_bessel_j by scan + bisection
double zero_oracle(double nu) {
  double a = std::max(nu, 1e-3), step = 0.05;
  while (std::cyl_bessel_j(nu, a + step) > 0) a += step;
  return oracle::bisect([nu](double x) { return std::cyl_bessel_j(nu, x); }, a, a + step, 1e-14);
}

}  // namespace

TEST_SUITE("spectrum") {
  TEST_CASE("gap at m = 0") {
    const GapResult g = transverse_gap(0);
    CHECK(std::abs(g.E1 - kLo) <= 1e-10);
    CHECK(g.threshold == doctest::Approx(kPi / 4).epsilon(1e-12));
    CHECK(g.residual <= 1e-10);
  }

  TEST_CASE("gap against an independent bisection and frozen values") {
    const std::pair<double, double> ref[] = {{0.5, 1.0289645914236307}, {1.0, 1.3097998250488812},
                                             {2.0, 1.651779601592785},  {5.0, 2.048866721957129}};
    for (auto [m, e] : ref) {
      const GapResult g = transverse_gap(m);
      const double b = oracle::bisect([m = m](double E) { return g_oracle(m, E); }, kLo, kHi - 1e-12, 1e-12);
      CHECK(std::abs(g.E1 - b) <= 2e-12);
      CHECK(std::abs(g.E1 - e) <= 1e-12);
      CHECK(g.residual <= 1e-10);
      CHECK(std::abs(g_oracle(m, g.E1)) <= 1e-10);
      CHECK(g.threshold == doctest::Approx(std::sqrt(m * m + g.E1)).epsilon(1e-15));
    }
  }

  TEST_CASE("Dirichlet limit at m = 1000") {
    const GapResult g = transverse_gap(1000);
    CHECK(g.E1 < kHi);
    CHECK(std::abs(g.E1 - 2.4649355505142498) <= 1e-12);
    // sin(2 sqrt E) = -sqrt E cos(2 sqrt E)/m -> 0, and kHi - E1 ~ pi^2/(4m)
    CHECK(std::abs(std::sin(2 * std::sqrt(g.E1))) <= 2e-3);
    CHECK(std::abs((kHi - g.E1) / (kPi * kPi / 4000) - 1) <= 1e-2);
  }

  TEST_CASE("property: gap interval, residual and edge on a mass grid") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> U(0, 50);
    std::vector<double> ms{0, 0.5, 1, 2, 5};
    for (int i = 0; i < 200; ++i) ms.push_back(U(rng));
    for (double m : ms) {
      const GapResult g = transverse_gap(m);
      CHECK(g.E1 >= kLo);
      CHECK(g.E1 < kHi);
      CHECK(g.residual <= 1e-10);
      CHECK(g.threshold > m);
    }
    CHECK_THROWS_AS(transverse_gap(-0.1), DomainError);
    CHECK_THROWS_AS(transverse_gap(std::nan("")), DomainError);
  }

  TEST_CASE("transverse eigenmodes") {
    for (double m : {0.0, 1.0, 5.0}) {
      const TransverseMode p = transverse_eigenmode(m, Sign::Plus), q = transverse_eigenmode(m, Sign::Minus);
      CHECK(p.M == doctest::Approx(transverse_gap(m).threshold).epsilon(1e-15));
      for (int i = 0; i < 50; ++i) {
        const double t = -1 + 2.0 * (i + 0.5) / 50;
        CHECK((p.apply_dtr(t) - p.M * p.eval(t)).norm() <= 1e-10);
        CHECK((q.apply_dtr(t) + q.M * q.eval(t)).norm() <= 1e-10);
        // second route: difference quotient of eval
        const double h = 1e-5;
        const Spinor fd = (p.eval(t + h) - p.eval(t - h)) / (2 * h);
        const Spinor d = -kI * (sigma1() * fd) + m * sigma3() * p.eval(t);
        CHECK((d - p.M * p.eval(t)).norm() <= 1e-7);
        CHECK((-kI * (sigma2() * p.eval(t)) - q.eval(t)).norm() <= 1e-12);
      }
      auto ip = [](const TransverseMode& a, const TransverseMode& b) {
        return oracle::simpson([&](double t) { return b.eval(t).dot(a.eval(t)); }, -1, 1, 4000);
      };
      CHECK(std::abs(ip(p, p) - 1.0) <= 1e-10);
      CHECK(std::abs(ip(q, q) - 1.0) <= 1e-10);
      CHECK(std::abs(ip(p, q)) <= 1e-10);
    }
  }

  TEST_CASE("plane Weyl quotient") {
    const double C = plane_weyl_constant();
    const double ref = oracle::trapezoid([](double r) { return r * std::pow(cutoff_eval(r).dphi, 2); }, 0, 1, 2000000) /
                       oracle::trapezoid([](double r) { return r * std::pow(cutoff(r), 2); }, 0, 1, 2000000);
    CHECK(std::abs(C - ref) <= 1e-8 * ref);
    CHECK(std::abs(C - 9.8590306674148511) <= 1e-10);
    CHECK(weyl_quotient(WeylKind::Plane, 1.5, 1.0, 1.0, 0).analytic == doctest::Approx(C).epsilon(1e-15));
    for (double mu : {1.0, -2.5}) {
      double first = 0;
      for (double n : {2.0, 4.0, 8.0, 16.0}) {
        const WeylQuotient w = weyl_quotient(WeylKind::Plane, mu, n, 1.0);
        if (n == 2.0) first = w.recomputed * n * n;
        CHECK(w.converged);
        CHECK(std::abs(w.analytic * n * n - C) <= 1e-12 * C);
        CHECK(w.rel_diff <= 1e-4);
        CHECK(std::abs(w.recomputed * n * n - first) <= 1e-6 * first);
      }
    }
    CHECK_THROWS_AS(weyl_quotient(WeylKind::Plane, 0.5, 2, 1.0), DomainError);
    CHECK_THROWS_AS(weyl_quotient(WeylKind::Plane, 1.5, 0.5, 1.0), DomainError);
  }

  TEST_CASE("strip Weyl quotient") {
    const double m = 1.0, M = transverse_gap(m).threshold, mu = M + 0.5;
    const double Cs = strip_weyl_constant();
    const double ref = oracle::trapezoid([](double r) { return std::pow(cutoff_eval(r).dphi, 2); }, 0, 1, 2000000) /
                       oracle::trapezoid([](double r) { return std::pow(cutoff(r), 2); }, 0, 1, 2000000);
    CHECK(std::abs(Cs - ref) <= 1e-8 * ref);
    double prev = 1e300;
    for (double n : {1.0, 2.0, 4.0}) {
      const WeylQuotient w = weyl_quotient(WeylKind::Strip, mu, n, m);
      CHECK(w.rel_diff <= 1e-4);
      CHECK(w.recomputed < prev);
      prev = w.recomputed;
    }
    CHECK_THROWS_AS(weyl_quotient(WeylKind::Strip, M - 0.1, 2, m), DomainError);
    CHECK(parse_weyl_kind("strip") == WeylKind::Strip);
    CHECK_THROWS_AS(parse_weyl_kind("disk"), InputError);
  }

  TEST_CASE("radial ground energies") {
    for (double rho : {0.5, 1.0, 3.0}) {
      CHECK(radial_ground_energy(0, rho) == doctest::Approx(kPi * kPi / (rho * rho)).epsilon(1e-13));
      CHECK(radial_ground_energy(1, rho) == doctest::Approx(kPi * kPi / (rho * rho)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(radial_ground_energy(0.5, 1), DomainError);
    CHECK_THROWS_AS(radial_ground_energy(0.5 + 1e-16, 1), DomainError);
    CHECK_THROWS_AS(radial_ground_energy(0.2, 0), DomainError);
  }

  TEST_CASE("finite-difference oracle for T_tau") {
    // tau = pi/3 as printed in the example list: nu = 0.547, second order
    {
      const double tau = kPi / 3, e = radial_ground_energy(tau, 1.0);
      const double fd = oracle::radial_fd_ground(tau * tau - tau, 1.0, 10000);
      CHECK(std::abs(fd - e) <= 1e-3 * e);
    }
    // tau = 1/3 (omega = 3pi/2, k = 0): nu = 1/6 and the scheme converges like h^{2 nu}
    {
      const double tau = 1.0 / 3, nu = 1.0 / 6, e = radial_ground_energy(tau, 1.0);
      const double a = oracle::radial_fd_ground(tau * tau - tau, 1.0, 1000);
      const double b = oracle::radial_fd_ground(tau * tau - tau, 1.0, 10000);
      MESSAGE("tau=1/3: FD(1e3) rel " << (a - e) / e << ", FD(1e4) rel " << (b - e) / e);
      const double rate = std::log10((a - e) / (b - e));
      CHECK(std::abs(rate - 2 * nu) <= 0.05);
      const double extrap = b + (b - a) / (std::pow(10.0, 2 * nu) - 1);
      CHECK(std::abs(extrap - e) <= 1e-3 * e);
    }
  }

  TEST_CASE("sector lower bound examples") {
    const LowerBound a = sector_lower_bound(1.5 * kPi, 1.0, 20);
    CHECK(a.bound == doctest::Approx(2.6575055776703937).epsilon(1e-12));
    CHECK(a.bound >= bessel_first_zero(0));
    CHECK(a.k_argmin == 0);
    const LowerBound b = sector_lower_bound(2 * kPi, 2.0, 20);
    CHECK(b.bound >= 1.0);
    CHECK_THROWS_AS(sector_lower_bound(1.5 * kPi, 1.0, 4), InputError);
    CHECK_THROWS_AS(sector_lower_bound(kPi, 1.0, 20), DomainError);
    CHECK_THROWS_AS(sector_lower_bound(-1, 1.0, 20), DomainError);
  }

  TEST_CASE("property: lower bound >= 2/rho against a brute-force oracle") {
    for (int i = 0; i < 50; ++i) {
      const double omega = 2 * kPi * (i + 0.5) / 50;
      if (std::abs(omega - kPi) < 1e-9) continue;
      // brute force over k <= 20, both signs: nu = |tau - 1/2| or tau + 1/2
      double best = 1e300;
      int kbest = -1;
      for (int k = 0; k <= 20; ++k) {
        const double tau = (2 * k + 1) * kPi / (2 * omega);
        for (double nu : {std::abs(tau - 0.5), tau + 0.5}) {
          if (nu > 30) continue;
          const double z = zero_oracle(nu);
          if (z < best) {
            best = z;
            kbest = k;
          }
        }
      }
      for (double rho : {0.5, 1.0, 2.0}) {
        const LowerBound lb = sector_lower_bound(omega, rho, 20);
        CHECK(lb.bound >= 2 / rho);
        CHECK(std::abs(lb.bound - best / rho) <= 1e-9 * best / rho);
        if (omega > kPi) CHECK(lb.k_argmin == 0);
        CHECK(lb.k_argmin == kbest);
      }
    }
  }
}
