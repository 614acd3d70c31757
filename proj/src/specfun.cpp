#include "dirac_lab/specfun.hpp"

#include <cmath>
#include <cstdint>

#include <boost/math/tools/toms748_solve.hpp>
#include <sstream>

#include "dirac_lab/errors.hpp"
#include "dirac_lab/quadrature.hpp"
#include "dirac_lab/spinor.hpp"

namespace dlab {

CutoffValue cutoff_eval(double r) {
  if (!(r >= 0)) throw DomainError("cutoff needs r >= 0");
  if (r <= 0.5) return {1.0, 0.0};
  if (r >= 1.0) return {0.0, 0.0};
  const double D = (r - 0.5) * (r - 1.0);
  double g = (r - 0.75) / D;
  const double dg = (-(r - 0.75) * (r - 0.75) - 1.0 / 16.0) / (D * D);
  g = std::clamp(g, -700.0, 700.0);
  // phi = 1/(1+e^-g), 1-phi = e^-g/(1+e^-g), evaluated on the stable side
  double phi, one_minus;
  if (g >= 0) {
    const double e = std::exp(-g);
    phi = 1.0 / (1.0 + e);
    one_minus = e / (1.0 + e);
  } else {
    const double e = std::exp(g);
    phi = e / (1.0 + e);
    one_minus = 1.0 / (1.0 + e);
  }
  double dphi = phi * one_minus * dg;
  if (!std::isfinite(dphi)) dphi = 0.0;
  return {phi, dphi};
}

namespace {

double series(double nu, double x) {
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const long double q = -0.25L * x * x;
  long double term = std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0));
  long double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<long double>(k) * (k + nu));
    sum += term;
    if (std::fabs(term) < 1e-19L * std::fabs(sum) && k > 0.5 * x) break;
  }
  return static_cast<double>(sum);
}

double hankel(double nu, double x) {
  const double mu = 4 * nu * nu;
  double P = 0, Q = 0;
  double a = 1.0;  // a_k / x^k
  double last = 1e300;
  for (int k = 0; k < 60; ++k) {
    if (k > 0) a *= (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * x);
    const double mag = std::abs(a);
    if (mag > last && 2.0 * k - 1 > 2 * nu) break;  // asymptotic tail started to grow
    last = mag;
    const double sgn = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) P += sgn * a;
    else Q += sgn * a;
    if (mag < 1e-17) break;
  }
  const double chi = x - (0.5 * nu + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (P * std::cos(chi) - Q * std::sin(chi));
}

// Integral representation, valid for x > 0 and any real nu.
double integral_rep(double nu, double x) {
  QuadOptions o{1e-15, 1e-14, 50, 4000};
  auto f1 = [&](double t) { return std::cos(nu * t - x * std::sin(t)); };
  const double a = integrate_1d(f1, 0.0, kPi, o).value / kPi;
  const double snp = std::sin(nu * kPi);
  if (snp == 0.0) return a;
  const double T = std::asinh(750.0 / x) + 1.0;
  auto f2 = [&](double t) { return std::exp(-x * std::sinh(t) - nu * t); };
  const double b = integrate_1d(f2, 0.0, T, o).value;
  return a - snp / kPi * b;
}

}  // namespace

double bessel_j(double nu, double x) {
  if (!(nu >= 0 && nu <= kBesselMaxOrder) || !(x >= 0 && x <= kBesselMaxArg)) {
    std::ostringstream os;
    os << "bessel_j(" << nu << ", " << x << ") outside the supported box";
    throw RangeError(os.str());
  }
  if (x <= 12.0) return series(nu, x);
  if (nu <= 5.0) return hankel(nu, x);
  return integral_rep(nu, x);
}

double bessel_first_zero(double nu) {
  if (!(nu >= 0 && nu <= kBesselMaxOrder)) throw RangeError("bessel_first_zero: order outside [0, 40]");
  // j_{nu,1} > nu + 1.8557 nu^{1/3}; start a bit below it. J_nu > 0 up to the first zero and
  // consecutive zeros are more than pi apart, so a 0.5 step cannot jump over a sign pair.
  double a = std::max(nu + 0.9 * 1.8557571 * std::cbrt(nu), 0.05);
  double fa = bessel_j(nu, a);
  if (!(fa > 0)) throw NumericalError("bessel_first_zero: start of bracket already past the first zero");
  double b = a;
  double fb = fa;
  bool found = false;
  while (a + 0.5 <= kBesselMaxArg) {
    b = a + 0.5;
    fb = bessel_j(nu, b);
    if (fb <= 0.0) {
      found = true;
      break;
    }
    a = b;
    fa = fb;
  }
  if (!found) {
    std::ostringstream os;
    os << "bessel_first_zero: no sign change for nu=" << nu << " up to x=" << b;
    throw NumericalError(os.str());
  }
  if (fb == 0.0) return b;
  std::uintmax_t iters = 100;
  const auto br = boost::math::tools::toms748_solve([nu](double x) { return bessel_j(nu, x); }, a, b, fa, fb,
                                                    boost::math::tools::eps_tolerance<double>(50), iters);
  const double root = 0.5 * (br.first + br.second);
  const double res = std::abs(bessel_j(nu, root));
  if (res > 1e-10) {
    std::ostringstream os;
    os << "bessel_first_zero: residual " << res << " at nu=" << nu;
    throw NumericalError(os.str());
  }
  return root;
}

BesselZeroTable::BesselZeroTable(const std::vector<double>& orders) {
  for (double nu : orders) zeros_.emplace(nu, bessel_first_zero(nu));
}

double BesselZeroTable::at(double nu) const {
  auto it = zeros_.find(nu);
  if (it == zeros_.end()) throw RangeError("order not tabulated");
  return it->second;
}

}  // namespace dlab
