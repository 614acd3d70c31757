#pragma once
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

// Oracles and helpers shared by the unit tests.
namespace oracle {

// Composite trapezoid on n uniform cells.
inline double trapezoid(const std::function<double(double)>& f, double a, double b, long n) {
  const double h = (b - a) / n;
  long double s = 0.5L * (f(a) + f(b));
  for (long i = 1; i < n; ++i) s += f(a + i * h);
  return static_cast<double>(s * h);
}

// Composite Simpson, n even.
inline std::complex<double> simpson(const std::function<std::complex<double>(double)>& f, double a, double b,
                                    long n) {
  const double h = (b - a) / n;
  std::complex<double> s = f(a) + f(b);
  for (long i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * (h / 3);
}

// Plain bisection on a sign change.
inline double bisect(const std::function<double(double)>& f, double a, double b, double tol) {
  double fa = f(a);
  while (b - a > tol) {
    const double m = 0.5 * (a + b), fm = f(m);
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Sturm count of eigenvalues < x for the symmetric tridiagonal (d, e).
inline long sturm_count(const std::vector<double>& d, double e, double x) {
  long c = 0;
  double q = 1;
  for (size_t i = 0; i < d.size(); ++i) {
    q = d[i] - x - (i ? e * e / q : 0.0);
    if (q == 0) q = 1e-300;
    if (q < 0) ++c;
  }
  return c;
}

// Smallest eigenvalue of -u'' + c/r^2 u on (0, rho), Dirichlet at both faces.
// Cell-centred grid r_i = (i + 1/2) h with the coefficient sampled at the
// centres; the Dirichlet faces enter through mirrored ghost cells.
inline double radial_fd_ground(double c, double rho, long N) {
  const double h = rho / N;
  std::vector<double> d(N);
  for (long i = 0; i < N; ++i) {
    const double r = (i + 0.5) * h;
    d[i] = 2 / (h * h) + c / (r * r);
  }
  d.front() += 1 / (h * h);
  d.back() += 1 / (h * h);
  const double e = -1 / (h * h);
  double lo = -1e7, hi = 1e7;
  while (hi - lo > 1e-12 * std::max(1.0, std::abs(hi))) {
    const double m = 0.5 * (lo + hi);
    (sturm_count(d, e, m) >= 1 ? hi : lo) = m;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
