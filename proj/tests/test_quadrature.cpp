#include <doctest.h>

#include <cmath>
#include <random>

#include "dirac_lab/modes.hpp"
#include "dirac_lab/quadrature.hpp"
#include "dirac_lab/specfun.hpp"
#include "support.hpp"

using namespace dlab;

TEST_SUITE("quadrature") {
  TEST_CASE("inverse square root on (0,1)") {
    auto q = integrate_1d([](double r) { return 1 / std::sqrt(r); }, 0.0, 1.0, 1e-8);
    CHECK(q.converged);
    CHECK(std::abs(q.value - 2.0) <= 1e-8);
    CHECK(q.abs_error_estimate <= 1e-8);
    CHECK(q.depth > 5);  // refined towards the endpoint
  }

  TEST_CASE("cutoff moments against a 1e7-point trapezoid") {
    const double lam = 1.0 / 3;
    auto f = [&](double r) { return std::pow(r, 2 * lam) * std::pow(cutoff(r), 2); };
    auto q = integrate_1d(f, 0.0, 1.0, 1e-12);
    CHECK(q.converged);
    const double ref = oracle::trapezoid(f, 0, 1, 10000000);
    CHECK(std::abs(q.value - ref) <= 1e-9);

    auto g = [](double r) { return r * std::pow(cutoff_eval(r).dphi, 2); };
    auto p = integrate_1d(g, 0.0, 1.0, 1e-12);
    CHECK(p.value > 0);
    CHECK(std::abs(p.value - oracle::trapezoid(g, 0, 1, 10000000)) <= 1e-6);
  }

  TEST_CASE("non-convergence is flagged, not thrown") {
    QuadOptions o;
    o.abs_tol = 1e-14;
    o.rel_tol = 0;
    o.max_intervals = 20;
    auto q = integrate_1d([](double r) { return std::pow(r, -0.9); }, 0.0, 1.0, o);
    CHECK_FALSE(q.converged);
    CHECK(std::isfinite(q.value));
    CHECK(q.abs_error_estimate > 1e-14);
  }

  TEST_CASE("complex integrand") {
    auto q = integrate_1d([](double t) { return std::exp(cplx(0, t)); }, 0.0, kPi, 1e-12);
    CHECK(std::abs(q.value - cplx(0, 2)) <= 1e-12);
  }

  TEST_CASE("sector areas") {
    SectorDomain d;
    d.rho = 1;
    d.omega = kPi / 2;
    auto q = integrate_sector([](double, double) { return 1.0; }, d);
    CHECK(q.converged);
    CHECK(q.value == doctest::Approx(kPi / 4).epsilon(1e-12));  // (omega/2) rho^2
    d.omega = 2 * kPi - 1e-2;
    d.rho = 1.7;
    auto p = integrate_sector([](double, double) { return 1.0; }, d);
    CHECK(p.value == doctest::Approx(0.5 * d.omega * d.rho * d.rho).epsilon(1e-12));
    d.omega = 2 * kPi + 0.1;
    CHECK_THROWS(integrate_sector([](double, double) { return 1.0; }, d));
  }

  TEST_CASE("singular mode norms reduce to 1D integrals") {
    for (double omega : {1.25 * kPi, 1.5 * kPi, 1.75 * kPi})
      for (double rho : {0.5, 1.0, 2.0})
        for (Sign sg : {Sign::Plus, Sign::Minus}) {
          const SingularMode m = singular_mode(sg, omega, rho);
          const SpinorField f = m.field();
          SectorQuadOptions so;
          // r^-0.8 at the vertex needs ~200 halvings for 1e-12
          so.radial = {1e-12, 1e-11, 300, 4000};
          auto q = integrate_sector([&](double r, double t) { return f.eval(r, t).squaredNorm(); }, f.support, so);
          const double e = 2 * sgn(sg) * m.lambda;
          QuadOptions o{1e-13, 1e-12, 300, 4000};
          auto p = integrate_1d([&](double r) { return std::pow(r, e) * std::pow(cutoff(r / rho), 2); }, 0.0, rho, o,
                                {0.5 * rho, 0.75 * rho});
          CHECK(q.converged);
          CHECK(p.converged);
          CHECK(std::abs(q.value - p.value) <= 1e-8 * p.value);
        }
  }

  TEST_CASE("property: linearity") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-2, 2);
    SectorDomain d;
    d.omega = 1.5 * kPi;
    for (int trial = 0; trial < 10; ++trial) {
      const double a = U(rng), b = U(rng), p = 0.5 + std::abs(U(rng)), c = U(rng);
      auto f = [&](double r, double t) { return std::pow(r, -0.5) * std::cos(p * t); };
      auto g = [&](double r, double t) { return std::exp(c * r) * std::sin(t); };
      auto qf = integrate_sector(f, d), qg = integrate_sector(g, d);
      auto qh = integrate_sector([&](double r, double t) { return a * f(r, t) + b * g(r, t); }, d);
      const double tol = std::abs(a) * qf.abs_error_estimate + std::abs(b) * qg.abs_error_estimate +
                         qh.abs_error_estimate + 1e-14;
      CHECK(std::abs(qh.value - (a * qf.value + b * qg.value)) <= tol);
    }
  }

  TEST_CASE("property: deeper max_depth never increases the error estimate") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> U(-0.9, 0.5);
    for (int trial = 0; trial < 20; ++trial) {
      const double e = U(rng);
      double last = std::numeric_limits<double>::infinity();
      for (int depth = 2; depth <= 40; depth += 2) {
        QuadOptions o{1e-13, 0, depth, 20000};
        auto q = integrate_1d([&](double r) { return std::pow(r, e) * std::cos(r); }, 0.0, 1.0, o);
        CHECK(q.abs_error_estimate <= last);
        last = q.abs_error_estimate;
      }
    }
  }

  TEST_CASE("tanh-sinh nodes") {
    double w = 0;
    auto n = tanh_sinh_nodes(-1, 2, 5, false);
    for (auto& t : n) {
      CHECK(t.x > -1);
      CHECK(t.x < 2);
      w += t.w;
    }
    CHECK(w == doctest::Approx(3.0).epsilon(1e-12));
    // new nodes at a level interleave with the old ones
    CHECK(tanh_sinh_nodes(-1, 2, 5, true).size() + tanh_sinh_nodes(-1, 2, 4, false).size() == n.size());
  }
}
