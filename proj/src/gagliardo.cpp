#include "dirac_lab/gagliardo.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "dirac_lab/errors.hpp"
#include "dirac_lab/geometry.hpp"

#ifdef DIRAC_LAB_HAVE_OPENMP
#include <omp.h>
#endif

namespace dlab {

int kernel_threads() {
  int n = 1;
#ifdef DIRAC_LAB_HAVE_OPENMP
  n = omp_get_max_threads();
#endif
  if (const char* env = std::getenv("DIRAC_LAB_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::max(n, 1);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Allowed ray parameters for y = x + t e inside the sector:
// [0, end1) and, for a reflex sector, the re-entry piece [re_in, t_disk).
struct Clip {
  double end1;
  double re_in;
  double t_disk;
};

Clip clip_ray(Vec2 x, Vec2 e, const SectorDomain& dom) {
  const double xe = dot(x, e);
  const double t_disk = -xe + std::sqrt(std::max(0.0, xe * xe + dom.rho * dom.rho - dot(x, x)));
  const Vec2 ew{std::cos(dom.omega), std::sin(dom.omega)};
  if (dom.omega > kPi) {
    // excluded wedge {cross(ew, y) >= 0, y2 <= 0} is convex
    double lo = 0, hi = kInf;
    auto half = [&](double a, double b) {
      if (b > 0) lo = std::max(lo, -a / b);
      else if (b < 0) hi = std::min(hi, -a / b);
      else if (a < 0) lo = kInf;
    };
    half(cross(ew, x), cross(ew, e));
    half(-x.y, -e.y);
    if (lo < hi && lo < t_disk) return {lo, hi, t_disk};
    return {t_disk, kInf, t_disk};
  }
  double hi = t_disk;
  auto half = [&](double a, double b) {
    if (b < 0) hi = std::min(hi, -a / b);
    else if (b == 0 && a < 0) hi = 0;
  };
  half(x.y, e.y);
  half(cross(x, ew), cross(e, ew));
  return {std::max(hi, 0.0), kInf, t_disk};
}

double wrap_into(double a, double base) {
  const double two = 2 * kPi;
  double v = std::fmod(a - base, two);
  if (v < 0) v += two;
  return base + v;
}

}  // namespace

InnerValue gagliardo_inner(const SpinorField& f, const SectorDomain& dom, double s, double S, double r,
                           double theta, const GagliardoOptions& opt) {
  InnerValue out;
  const Vec2 x{r * std::cos(theta), r * std::sin(theta)};
  const Spinor fx = f.eval(r, theta);
  long evals = 0;
  auto at = [&](Vec2 y) -> Spinor {
    ++evals;
    double th = std::atan2(y.y, y.x);
    if (th < 0) th += 2 * kPi;
    return f.eval(std::hypot(y.x, y.y), th);
  };
  const double p = 1.0 / (2.0 - 2.0 * s);
  const double Sr = S * r;
  const double tmin = 1e-6 * r;
  QuadOptions tq{1e-300, opt.t_rel_tol, 50, 200};
  bool ok = true;

  auto J = [&](double beta) -> cplx {
    const Vec2 e{std::cos(beta), std::sin(beta)};
    const Clip c = clip_ray(x, e, dom);
    double near = 0, far = 0;
    const double T = std::min(Sr, c.end1);
    if (T > 0) {
      auto g = [&](double v) {
        // |f(x)-f(y)|^2/t^2 tends to |d_e f|^2; below tmin the difference
        // quotient is rounding noise, so it is frozen there
        const double t = std::max(T * std::pow(v, p), tmin);
        return (fx - at(x + t * e)).squaredNorm() / (t * t);
      };
      auto q = integrate_1d(g, 0.0, 1.0, tq);
      ok = ok && q.converged;
      near = std::pow(T, 2.0 - 2.0 * s) * p * q.value;
    }
    auto seg = [&](double a, double b) {
      if (!(b > a)) return;
      auto g = [&](double t) { return (fx - at(x + t * e)).squaredNorm() * std::pow(t, -2.0 * s - 1.0); };
      std::vector<double> br;
      const double ts = -dot(x, e);
      if (ts > a && ts < b) br.push_back(ts);
      auto q = integrate_1d(g, a, b, tq, br);
      ok = ok && q.converged;
      far += q.value;
    };
    seg(Sr, c.end1);
    if (c.re_in < c.t_disk) seg(std::max(Sr, c.re_in), c.t_disk);
    return {near, far};
  };

  const double b0 = std::atan2(-x.y, -x.x);
  std::vector<double> br;
  auto add = [&](double a) { br.push_back(wrap_into(a, b0)); };
  const Vec2 a0{dom.rho, 0.0}, a1{dom.rho * std::cos(dom.omega), dom.rho * std::sin(dom.omega)};
  add(std::atan2((a0 - x).y, (a0 - x).x));
  add(std::atan2((a1 - x).y, (a1 - x).x));
  for (double d : {0.0, kPi, dom.omega, dom.omega + kPi}) add(d);
  // directions where the near/far split radius meets an edge line or the arc
  for (double phi : {0.0, dom.omega}) {
    const Vec2 u{std::cos(phi), std::sin(phi)};
    const double signed_dist = cross(u, x);
    const double delta = std::abs(signed_dist);
    if (delta < Sr && delta > 0) {
      const Vec2 foot = dot(x, u) * u;
      const double nb = std::atan2((foot - x).y, (foot - x).x);
      const double da = std::acos(delta / Sr);
      add(nb + da);
      add(nb - da);
    }
  }
  if (dom.rho - r < Sr) {
    const double ca = (dom.rho * dom.rho - r * r - Sr * Sr) / (2 * Sr * r);
    if (std::abs(ca) <= 1) {
      const double al = std::acos(ca);
      add(theta + al);
      add(theta - al);
    }
  }
  // beta - b0 = pi u^3 on u in [0,1], mirrored on [1,2]: the rays through the
  // vertex (both ends) carry an integrable power singularity of the field
  auto to_u = [&](double b) {
    const double d = (b - b0) / kPi;
    return d <= 1 ? std::cbrt(d) : 2 - std::cbrt(2 - d);
  };
  auto Ju = [&](double u) -> cplx {
    const double v = u <= 1 ? u : 2 - u;
    const double beta = u <= 1 ? b0 + kPi * v * v * v : b0 + 2 * kPi - kPi * v * v * v;
    return 3 * kPi * v * v * J(beta);
  };
  std::vector<double> ub{1.0};
  for (double b : br) ub.push_back(to_u(b));
  QuadOptions bq{1e-300, opt.inner_rel_tol, 40, 600};
  auto q = integrate_1d(Ju, 0.0, 2.0, bq, ub);
  out.near = q.value.real();
  out.far = q.value.imag();
  out.abs_error = q.abs_error_estimate;
  out.converged = ok && q.converged;
  out.evaluations = evals;
  return out;
}

GagliardoShell gagliardo_shell(const SpinorField& f, const SectorDomain& dom, double s, double r_lo, double r_hi,
                               const GagliardoOptions& opt) {
  if (!(s > 0 && s < 1)) throw DomainError("Gagliardo order s must lie in (0,1)");
  dom.check();
  const double S = opt.split > 0 ? opt.split : (dom.omega > kPi ? segment_constant(dom.omega) : 0.5);
  GagliardoShell sh;
  sh.r_lo = r_lo;
  sh.r_hi = r_hi;
  int panels = r_hi > 0.75 * dom.rho ? 2 : 1;

  struct Node {
    double r, th;
  };
  while (true) {
    // radial Kronrod 7-point rule with embedded 3-point Gauss rule, per panel
    static constexpr double xk7[4] = {0.0, 0.4342437493468025580020715, 0.7745966692414833770358531,
                                      0.9604912687080202834235071};
    static constexpr double wk7[4] = {0.4509165386584741423451497, 0.4013974147759622229050518,
                                      0.2684880898683334407285692, 0.1046562260264672651938239};
    static constexpr double wg3[4] = {8.0 / 9.0, 0.0, 5.0 / 9.0, 0.0};
    std::vector<double> rn, wk, wg;
    const double ph = (r_hi - r_lo) / panels;
    for (int p = 0; p < panels; ++p) {
      const double c = r_lo + (p + 0.5) * ph, h = 0.5 * ph;
      for (int j = -3; j <= 3; ++j) {
        const int m = std::abs(j);
        rn.push_back(c + (j < 0 ? -1.0 : 1.0) * h * xk7[m]);
        wk.push_back(h * wk7[m]);
        wg.push_back(h * wg3[m]);
      }
    }
    const size_t nr = rn.size();
    std::vector<cplx> T(nr, cplx{});  // theta sums of (near, far) per radial node
    std::vector<double> E(nr, 0.0);
    double prev = 0, val = 0, kval = 0, gval = 0, terr = kInf, ierr = 0;
    bool conv_inner = true;
    int level = 0;
    for (; level <= opt.max_theta_level; ++level) {
      const auto tn = tanh_sinh_nodes(0.0, dom.omega, level, true, 2.35);
      std::vector<Node> nodes;
      for (size_t i = 0; i < nr; ++i)
        for (auto& t : tn) nodes.push_back({rn[i], t.x});
      std::vector<InnerValue> res(nodes.size());
      bool failed = false;
      const long N = static_cast<long>(nodes.size());
      auto body = [&](long k) {
        try {
          res[k] = gagliardo_inner(f, dom, s, S, nodes[k].r, nodes[k].th, opt);
        } catch (...) {
          failed = true;
        }
      };
      if (opt.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(kernel_threads())
        for (long k = 0; k < N; ++k) body(k);
      } else {
        for (long k = 0; k < N; ++k) body(k);
      }
      if (failed) throw NumericalError("field evaluation failed inside the Gagliardo kernel");
      sh.nodes += N;
      for (size_t i = 0; i < nr; ++i) {
        if (level > 0) {
          T[i] *= 0.5;
          E[i] *= 0.5;
        }
        for (size_t j = 0; j < tn.size(); ++j) {
          const InnerValue& v = res[i * tn.size() + j];
          T[i] += tn[j].w * cplx(v.near, v.far);
          E[i] += tn[j].w * v.abs_error;
          conv_inner = conv_inner && v.converged;
        }
      }
      cplx kv{}, gv{};
      ierr = 0;
      for (size_t i = 0; i < nr; ++i) {
        kv += wk[i] * rn[i] * T[i];
        gv += wg[i] * rn[i] * T[i];
        ierr += wk[i] * rn[i] * E[i];
      }
      kval = kv.real() + kv.imag();
      gval = gv.real() + gv.imag();
      sh.near = kv.real();
      sh.far = kv.imag();
      val = kval;
      if (level > 0) terr = std::abs(val - prev);
      prev = val;
      if (level >= 2 && terr <= 0.5 * opt.rel_tol * std::abs(val)) break;
    }
    const double rerr = std::abs(kval - gval);
    sh.value = val;
    sh.theta_level = std::min(level, opt.max_theta_level);
    sh.r_panels = panels;
    sh.abs_error = rerr + terr + ierr;
    sh.converged = conv_inner && sh.abs_error <= opt.rel_tol * std::abs(val) + 1e-300;
    if (val == 0.0 && rerr == 0.0 && terr == 0.0) sh.converged = conv_inner;
    if (rerr <= 0.5 * opt.rel_tol * std::abs(val) || panels >= opt.max_r_panels || val == 0.0) break;
    panels *= 2;
  }
  return sh;
}

const char* to_string(GrowthVerdict::Kind k) {
  switch (k) {
    case GrowthVerdict::Finite: return "finite";
    case GrowthVerdict::Diverging: return "diverging";
    default: return "inconclusive";
  }
}

GrowthVerdict classify_growth(const std::vector<double>& a) {
  GrowthVerdict v;
  double partial = 0;
  for (double x : a) partial += x;
  bool all_zero = true;
  for (double x : a) all_zero = all_zero && x == 0.0;
  if (all_zero && !a.empty()) {
    v.kind = GrowthVerdict::Finite;
    v.ratio = 0;
    v.extrapolated = 0;
    v.note = "identically zero";
    return v;
  }
  const size_t n = a.size();
  if (n < 4) {
    v.note = "need at least 4 dyadic shells";
    return v;
  }
  double rt[3];
  for (int k = 0; k < 3; ++k) {
    const double num = a[n - 3 + k], den = a[n - 4 + k];
    if (!(den > 0) || !(num >= 0)) {
      v.note = "non-positive shell contribution";
      return v;
    }
    rt[k] = num / den;
  }
  constexpr double margin = 0.01, stable = 0.01;
  const double q = std::sqrt(rt[1] * rt[2]);
  v.ratio = q;
  const bool above = rt[0] > 1 + margin && rt[1] > 1 + margin && rt[2] > 1 + margin;
  const bool below = rt[0] < 1 - margin && rt[1] < 1 - margin && rt[2] < 1 - margin;
  const bool steady = std::abs(rt[2] - rt[1]) <= stable;
  if (above || (!below && steady && q >= 1)) {
    v.kind = GrowthVerdict::Diverging;
    v.extrapolated = kInf;
    v.note = above ? "shell contributions grow geometrically" : "steady ratio at or above 1";
  } else if (below || (steady && q < 1)) {
    v.kind = GrowthVerdict::Finite;
    v.tail = a[n - 1] * q / (1 - q);
    v.tail_error = a[n - 1] * std::abs(rt[2] - rt[1]) / ((1 - q) * (1 - q));
    v.extrapolated = partial + v.tail;
    v.note = "geometric tail extrapolated";
  } else {
    v.note = "shell ratios straddle 1 without settling";
  }
  return v;
}

GagliardoResult gagliardo_seminorm(const SpinorField& f, const SectorDomain& dom, double s, double tol,
                                   int max_depth, const GagliardoOptions& opt_in) {
  if (max_depth < 0) throw DomainError("max_depth must be nonnegative");
  GagliardoOptions opt = opt_in;
  if (tol > 0) opt.rel_tol = tol;
  GagliardoResult out;
  double part = 0;
  bool conv = true;
  std::vector<double> vals;
  for (int d = 0; d <= max_depth; ++d) {
    const double hi = dom.rho * std::ldexp(1.0, -d), lo = 0.5 * hi;
    GagliardoShell sh = gagliardo_shell(f, dom, s, lo, hi, opt);
    sh.depth = d;
    part += sh.value;
    out.partial.push_back(part);
    out.near_total += sh.near;
    out.far_total += sh.far;
    out.abs_error_estimate += sh.abs_error;
    conv = conv && sh.converged;
    out.evaluations += sh.nodes;
    vals.push_back(sh.value);
    out.shells.push_back(sh);
  }
  out.depth = max_depth;
  out.verdict = classify_growth(vals);
  if (out.verdict.kind == GrowthVerdict::Finite) {
    out.value = out.verdict.extrapolated;
    out.abs_error_estimate += out.verdict.tail_error;
  } else {
    out.value = part;
  }
  out.converged = conv && out.verdict.kind == GrowthVerdict::Finite;
  return out;
}

}  // namespace dlab
