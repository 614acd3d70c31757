#pragma once
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <type_traits>
#include <utility>
#include <vector>

#include "dirac_lab/sector.hpp"

namespace dlab {

template <class T>
struct QuadratureResult {
  T value{};
  double abs_error_estimate = 0.0;
  int depth = 0;  // deepest bisection level reached
  bool converged = false;
  long evaluations = 0;
};

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_depth = 64;
  int max_intervals = 20000;
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
// Value carried together with a nonnegative side channel. The adaptive rule
// only looks at the value; the side channel is integrated with the same
// weights, which propagates inner errors into the outer integral.
template <class T>
struct Tracked {
  T v{};
  double e = 0;
  Tracked& operator+=(const Tracked& o) { v += o.v; e += o.e; return *this; }
  Tracked& operator*=(double s) { v *= s; e *= s; return *this; }
  friend Tracked operator+(Tracked a, const Tracked& b) { return a += b; }
  friend Tracked operator-(Tracked a, const Tracked& b) { a.v -= b.v; a.e -= b.e; return a; }
  friend Tracked operator*(double s, Tracked a) { return a *= s; }
};
template <class T>
double magnitude(const Tracked<T>& t) { return magnitude(t.v); }

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
inline constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                   0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                   0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                   0.207784955007898467600689403773245, 0.0};
inline constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                   0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                   0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                   0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                  0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a, b;
  T value;
  double err;
  int depth;
};

template <class T, class F>
Panel<T> gk15(F& f, double a, double b, int depth) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T fv[15];
  fv[7] = f(c);
  for (int j = 0; j < 7; ++j) {
    fv[j] = f(c - h * kXgk[j]);
    fv[14 - j] = f(c + h * kXgk[j]);
  }
  T k = kWgk[7] * fv[7];
  T g = kWg[3] * fv[7];
  double resabs = kWgk[7] * magnitude(fv[7]);
  for (int j = 0; j < 7; ++j) {
    k += kWgk[j] * (fv[j] + fv[14 - j]);
    resabs += kWgk[j] * (magnitude(fv[j]) + magnitude(fv[14 - j]));
    if (j % 2 == 1) g += kWg[j / 2] * (fv[j] + fv[14 - j]);
  }
  const T mean = 0.5 * k;
  double resasc = kWgk[7] * magnitude(fv[7] - mean);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (magnitude(fv[j] - mean) + magnitude(fv[14 - j] - mean));
  resasc *= std::abs(h);
  resabs *= std::abs(h);
  k *= h;
  g *= h;
  double err = magnitude(k - g);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50 * eps)) err = std::max(50 * eps * resabs, err);
  if (!std::isfinite(magnitude(k))) err = std::numeric_limits<double>::infinity();
  return {a, b, k, err, depth};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod bisection. Endpoint power singularities are
// resolved by repeated bisection of the panel touching the endpoint.
template <class F>
auto integrate_1d(F&& f, double a, double b, const QuadOptions& opt, const std::vector<double>& breakpoints = {})
    -> QuadratureResult<std::decay_t<decltype(f(a))>> {
  using T = std::decay_t<decltype(f(a))>;
  using P = detail::Panel<T>;
  QuadratureResult<T> res;
  if (!(a < b)) return res;
  std::vector<double> pts{a};
  for (double p : breakpoints)
    if (p > a && p < b) pts.push_back(p);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  auto cmp = [](const P& x, const P& y) { return x.err < y.err || (x.err == y.err && x.a > y.a); };
  std::priority_queue<P, std::vector<P>, decltype(cmp)> heap(cmp);
  std::vector<P> frozen;
  T total{};
  double total_err = 0;
  long nint = 0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    P p = detail::gk15<T>(f, pts[i], pts[i + 1], 0);
    total += p.value;
    total_err += p.err;
    heap.push(p);
    ++nint;
  }
  res.evaluations = 15 * nint;
  auto tol = [&] { return std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total)); };
  bool ok = total_err <= tol();
  while (!ok && !heap.empty() && nint < opt.max_intervals) {
    P w = heap.top();
    heap.pop();
    const double mid = 0.5 * (w.a + w.b);
    if (w.depth >= opt.max_depth || !(mid > w.a && mid < w.b)) {
      frozen.push_back(w);
      continue;
    }
    P l = detail::gk15<T>(f, w.a, mid, w.depth + 1);
    P r = detail::gk15<T>(f, mid, w.b, w.depth + 1);
    res.evaluations += 30;
    ++nint;
    total += l.value + r.value - w.value;
    total_err += l.err + r.err - w.err;
    res.depth = std::max(res.depth, w.depth + 1);
    heap.push(l);
    heap.push(r);
    ok = total_err <= tol();
  }
  // deterministic final sum in order of position
  std::vector<P> all = std::move(frozen);
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const P& x, const P& y) { return x.a < y.a; });
  T v{};
  double e = 0;
  for (auto& p : all) {
    v += p.value;
    e += p.err;
  }
  res.value = v;
  res.abs_error_estimate = e;
  res.converged = e <= std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(v)) && std::isfinite(e);
  return res;
}

template <class F>
auto integrate_1d(F&& f, double a, double b, double tol) {
  QuadOptions o;
  o.abs_tol = tol;
  o.rel_tol = 0.0;
  return integrate_1d(std::forward<F>(f), a, b, o);
}

// Tanh-sinh nodes on (a,b) at step h = 2^-level; only the nodes new at
// `level` are returned when `only_new` is set. Endpoint distances are
// formed without cancellation.
struct TSNode {
  double x;
  double w;
};
// tmax = 3 reaches ~1e-14 relative distance to the endpoints, 2.35 stops at ~1e-7.
std::vector<TSNode> tanh_sinh_nodes(double a, double b, int level, bool only_new, double tmax = 3.0);

// Polar sector integral of f(r, theta) r dr dtheta. Nested adaptive rule:
// outer radial integral with dyadic breakpoints rho 2^-k towards the vertex,
// inner angular integral.
struct SectorQuadOptions {
  QuadOptions radial{1e-10, 1e-10, 64, 4000};
  QuadOptions angular{1e-12, 1e-11, 40, 2000};
  int dyadic_levels = 12;
  std::vector<double> radial_breaks;   // extra breakpoints in r
  std::vector<double> angular_breaks;  // extra breakpoints in theta
};

template <class F>
auto integrate_sector(F&& f, const SectorDomain& dom, const SectorQuadOptions& opt = {})
    -> QuadratureResult<std::decay_t<decltype(f(1.0, 1.0))>> {
  using T = std::decay_t<decltype(f(1.0, 1.0))>;
  using TT = detail::Tracked<T>;
  dom.check();
  bool inner_ok = true;
  long evals = 0;
  int inner_depth = 0;
  auto radial = [&](double r) -> TT {
    auto g = [&](double th) -> T { return f(r, th); };
    auto q = integrate_1d(g, 0.0, dom.omega, opt.angular, opt.angular_breaks);
    inner_ok = inner_ok && q.converged;
    inner_depth = std::max(inner_depth, q.depth);
    evals += q.evaluations;
    return {r * q.value, r * q.abs_error_estimate};
  };
  std::vector<double> br = opt.radial_breaks;
  for (int k = 1; k <= opt.dyadic_levels; ++k) br.push_back(dom.rho * std::ldexp(1.0, -k));
  auto q = integrate_1d(radial, 0.0, dom.rho, opt.radial, br);
  QuadratureResult<T> res;
  res.value = q.value.v;
  res.abs_error_estimate = q.abs_error_estimate + std::abs(q.value.e);
  res.converged = q.converged && inner_ok && std::isfinite(res.abs_error_estimate);
  res.depth = std::max(q.depth, inner_depth);
  res.evaluations = evals;
  return res;
}

}  // namespace dlab
