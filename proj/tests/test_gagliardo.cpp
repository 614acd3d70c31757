#include <doctest.h>

#include <cmath>

#include "dirac_lab/gagliardo.hpp"
#include "dirac_lab/geometry.hpp"
#include "mc_oracle.hpp"

using namespace dlab;

TEST_SUITE("gagliardo") {
  TEST_CASE("constant field has zero seminorm") {
    SpinorField f;
    f.support = SectorDomain{1.0, 1.5 * kPi, {}, 0.0};
    f.eval = [](double, double) { return Spinor(cplx(0.3, 1), cplx(-2, 0)); };
    auto g = gagliardo_seminorm(f, f.support, 0.7, 1e-3, 4);
    CHECK(g.value == 0.0);
    CHECK(g.verdict.kind == GrowthVerdict::Finite);
    CHECK(g.shells.size() == 5);
  }

  TEST_CASE("classify_growth on synthetic sequences") {
    auto a = classify_growth({1, 0.5, 0.25, 0.125, 0.0625});
    CHECK(a.kind == GrowthVerdict::Finite);
    CHECK(a.ratio == doctest::Approx(0.5));
    CHECK(a.extrapolated == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(a.tail_error == doctest::Approx(0.0));

    std::vector<double> up;
    for (int k = 0; k < 6; ++k) up.push_back(std::pow(1.1, k));
    auto b = classify_growth(up);
    CHECK(b.kind == GrowthVerdict::Diverging);
    CHECK(b.ratio == doctest::Approx(1.1));
    CHECK(std::isinf(b.extrapolated));

    // slow growth below the margin but with a settled ratio
    std::vector<double> slow;
    for (int k = 0; k < 6; ++k) slow.push_back(std::pow(1.005, k));
    CHECK(classify_growth(slow).kind == GrowthVerdict::Diverging);

    CHECK(classify_growth({1, 2, 3}).kind == GrowthVerdict::Inconclusive);
    CHECK(classify_growth({1, 1.3, 0.8, 1.2, 0.9}).kind == GrowthVerdict::Inconclusive);
    CHECK(classify_growth({1, 0, 0, 1}).kind == GrowthVerdict::Inconclusive);
    CHECK(classify_growth({0, 0, 0, 0}).kind == GrowthVerdict::Finite);
  }

  TEST_CASE("near/far split does not change the shell value") {
    const SpinorField f = singular_mode(Sign::Plus, 1.5 * kPi, 1.0).field();
    GagliardoOptions o;
    o.exec = Exec::Serial;
    o.split = 0.5;
    auto a = gagliardo_shell(f, f.support, 0.5, 0.25, 0.5, o);
    o.split = 0.2;
    auto b = gagliardo_shell(f, f.support, 0.5, 0.25, 0.5, o);
    CHECK(std::abs(a.near - b.near) > 0.5 * b.near);  // the split really moves mass
    CHECK(std::abs(a.value - b.value) <= 2e-3 * a.value + a.abs_error + b.abs_error);
  }

  TEST_CASE("plus mode, s = 0.5: shells against an unsplit Monte-Carlo estimate") {
    const SpinorField f = singular_mode(Sign::Plus, 1.5 * kPi, 1.0).field();
    auto g = gagliardo_seminorm(f, f.support, 0.5, 1e-3, 3);
    double mc = 0, var = 0;
    for (int d = 0; d <= 3; ++d) {
      const double hi = std::ldexp(1.0, -d);
      auto e = oracle::gagliardo_shell_mc(f, 0.5, 0.5 * hi, hi, 400000, 1000 + d);
      mc += e.mean;
      var += e.stderr_ * e.stderr_;
    }
    MESSAGE("partial(3) = " << g.partial[3] << ", MC = " << mc << " +- " << std::sqrt(var));
    CHECK(std::sqrt(var) < 0.01 * mc);
    CHECK(std::abs(g.partial[3] - mc) <= 0.05 * mc);
    CHECK(g.verdict.kind == GrowthVerdict::Finite);
  }

  TEST_CASE("shell value scales exactly under a dilation") {
    // uncut r^{lambda-1/2} Phi^+ is homogeneous: halving the shell and the sector
    // together scales the double integral by 2^{-(2 lambda + 1 - 2 s)}
    const double omega = 1.5 * kPi, lam = kPi / (2 * omega), s = 0.6;
    SpinorField f;
    f.support = SectorDomain{1.0, omega, {}, 0.0};
    const SingularMode m = singular_mode(Sign::Plus, omega, 1.0);
    f.eval = [m, lam](double r, double th) -> Spinor { return std::pow(r, lam - 0.5) * m.angular(th); };
    GagliardoOptions o;
    o.exec = Exec::Serial;
    auto a = gagliardo_shell(f, f.support, s, 0.125, 0.25, o);
    SectorDomain half = f.support;
    half.rho = 0.5;
    auto b = gagliardo_shell(f, half, s, 0.0625, 0.125, o);
    const double q = std::pow(2.0, -(2 * lam + 1 - 2 * s));
    CHECK(std::abs(b.value - q * a.value) <= 2e-3 * b.value + b.abs_error + q * a.abs_error);
  }
}
