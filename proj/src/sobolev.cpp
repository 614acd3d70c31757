#include "dirac_lab/sobolev.hpp"

#include <cmath>
#include <random>

#include "dirac_lab/errors.hpp"
#include "dirac_lab/geometry.hpp"

namespace dlab {

void ModeCoefficients::check() const {
  const size_t n = window.size();
  if (c_plus.size() != n || c_minus.size() != n || omegas.size() != n)
    throw InputError("coefficient family: window, c_plus, c_minus and omegas must have equal length");
  for (double w : omegas)
    if (!(w > kPi && w < 2 * kPi)) throw DomainError("coefficient family: every omega must lie in (pi, 2pi)");
}

double sobolev_threshold(double omega) { return (kPi + omega) / (2 * omega); }

std::vector<double> default_s_grid() {
  std::vector<double> g;
  for (int k = 0; k <= 20; ++k) g.push_back(0.5 + 0.49 * k / 20.0);
  return g;
}

std::vector<ScanPoint> regularity_scan(const SingularMode& mode, const std::vector<double>& s_grid,
                                       const ScanOptions& opt) {
  if (mode.omega > 2 * kPi - kScanOmegaGap)
    throw DomainError("regularity scan refuses omega > 2pi - 1e-2 (gap to 2pi too small)");
  for (size_t i = 0; i < s_grid.size(); ++i) {
    if (!(s_grid[i] > 0 && s_grid[i] < 1)) throw DomainError("s grid values must lie in (0,1)");
    if (i > 0 && !(s_grid[i] > s_grid[i - 1])) throw DomainError("s grid must be strictly increasing");
  }
  const SpinorField f = mode.field();
  std::vector<ScanPoint> out;
  for (double s : s_grid) {
    const GagliardoResult g = gagliardo_seminorm(f, f.support, s, opt.tol, opt.max_depth, opt.gagliardo);
    ScanPoint p;
    p.omega = mode.omega;
    p.s = s;
    p.verdict = g.verdict.kind;
    p.value_or_growth = g.verdict.kind == GrowthVerdict::Finite ? g.value : g.verdict.ratio;
    p.depth = g.depth;
    p.partial = g.partial;
    p.converged = g.converged;
    out.push_back(p);
  }
  return out;
}

namespace {

bool in_closed_sector(const SectorDomain& d, Vec2 p) {
  const double r = std::hypot(p.x, p.y);
  if (r > d.rho * (1 + 1e-12)) return false;
  if (r <= 1e-14 * d.rho) return true;
  double th = std::atan2(p.y, p.x);
  if (th < 0) th += 2 * kPi;
  const double eps = 1e-12;
  return th <= d.omega + eps || th >= 2 * kPi - eps;
}

}  // namespace

bool segment_in_sector(const SectorDomain& dom, Vec2 x, Vec2 y, int grid) {
  for (int k = 0; k <= grid; ++k) {
    const double l = static_cast<double>(k) / grid;
    if (!in_closed_sector(dom, x + l * (y - x))) return false;
  }
  return true;
}

long segment_inclusion_check(double omega, long n, std::uint64_t seed, double S, int grid) {
  if (!(omega > kPi && omega < 2 * kPi)) throw DomainError("segment check needs omega in (pi, 2pi)");
  if (S <= 0) S = segment_constant(omega);
  const SectorDomain dom{1.0, omega, {}, 0.0};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  long violations = 0, accepted = 0;
  while (accepted < n) {
    const double r = std::sqrt(U(rng)), th = omega * U(rng);
    const Vec2 x{r * std::cos(th), r * std::sin(th)};
    const double t = S * r * std::sqrt(U(rng)), b = 2 * kPi * U(rng);
    const Vec2 y = x + t * Vec2{std::cos(b), std::sin(b)};
    const double ry = std::hypot(y.x, y.y);
    double ty = std::atan2(y.y, y.x);
    if (ty < 0) ty += 2 * kPi;
    if (!(ry < 1.0 && ty > 0 && ty < omega)) continue;  // y must lie in the sector
    ++accepted;
    if (!segment_in_sector(dom, x, y, grid)) ++violations;
  }
  return violations;
}

WeightedNorms weighted_l2_norms(const std::vector<cplx>& c, const std::vector<double>& omegas) {
  if (c.size() != omegas.size()) throw InputError("weighted norms: lengths differ");
  WeightedNorms w;
  for (size_t j = 0; j < c.size(); ++j) {
    if (!(omegas[j] > kPi)) throw DomainError("weighted norms: omega_j <= pi");
    const double a = std::norm(c[j]);
    w.g_norm += a;
    w.g_tilde_norm += a / (omegas[j] - kPi);
  }
  return w;
}

WeightedNorms weighted_l2_norms(const ModeCoefficients& k, Sign which) {
  return weighted_l2_norms(which == Sign::Plus ? k.c_plus : k.c_minus, k.omegas);
}

std::vector<WeightedNorms> weighted_l2_partial_sums(const std::vector<cplx>& c, const std::vector<double>& omegas) {
  if (c.size() != omegas.size()) throw InputError("weighted norms: lengths differ");
  std::vector<WeightedNorms> out;
  WeightedNorms w;
  for (size_t j = 0; j < c.size(); ++j) {
    if (!(omegas[j] > kPi)) throw DomainError("weighted norms: omega_j <= pi");
    const double a = std::norm(c[j]);
    w.g_norm += a;
    w.g_tilde_norm += a / (omegas[j] - kPi);
    out.push_back(w);
  }
  return out;
}

}  // namespace dlab

#include "dirac_lab/quadrature.hpp"

#ifdef DIRAC_LAB_HAVE_OPENMP
#include <omp.h>
#endif

namespace dlab {

namespace {

struct Node {
  Vec2 x;
  double w;
  Spinor v;
};

// Tensor Kronrod-15 rule on the sector: dyadic radial panels towards the
// vertex (each panel split `split` times), two angular panels per split.
std::vector<Node> sector_nodes(const SpinorField& f, int split) {
  const SectorDomain& d = f.support;
  std::vector<double> rb{0.0};
  for (int k = 14; k >= 1; --k) rb.push_back(d.rho * std::ldexp(1.0, -k));
  rb.push_back(0.75 * d.rho);
  rb.push_back(d.rho);
  auto refine = [split](const std::vector<double>& b) {
    std::vector<double> out{b.front()};
    for (size_t i = 1; i < b.size(); ++i)
      for (int q = 1; q <= split; ++q) out.push_back(b[i - 1] + (b[i] - b[i - 1]) * q / split);
    return out;
  };
  const std::vector<double> r = refine(rb), t = refine({0.0, 0.5 * d.omega, d.omega});
  auto rule = [](const std::vector<double>& b) {
    std::vector<std::pair<double, double>> out;
    for (size_t i = 1; i < b.size(); ++i) {
      const double c = 0.5 * (b[i - 1] + b[i]), h = 0.5 * (b[i] - b[i - 1]);
      for (int j = 0; j < 7; ++j) {
        out.push_back({c - h * detail::kXgk[j], h * detail::kWgk[j]});
        out.push_back({c + h * detail::kXgk[j], h * detail::kWgk[j]});
      }
      out.push_back({c, h * detail::kWgk[7]});
    }
    return out;
  };
  std::vector<Node> nodes;
  for (auto [rr, wr] : rule(r))
    for (auto [tt, wt] : rule(t)) nodes.push_back({d.to_global(rr, tt), wr * wt * rr, f.eval(rr, tt)});
  return nodes;
}

double cross_sum(const std::vector<Node>& a, cplx ca, const std::vector<Node>& b, cplx cb, double s, Exec exec) {
  std::vector<double> part(a.size(), 0.0);
  auto row = [&](long i) {
    const Spinor u = ca * a[i].v;
    double acc = 0;
    for (const Node& y : b) {
      const double d2 = (a[i].x.x - y.x.x) * (a[i].x.x - y.x.x) + (a[i].x.y - y.x.y) * (a[i].x.y - y.x.y);
      acc += y.w * (u - cb * y.v).squaredNorm() * std::pow(d2, -1.0 - s);
    }
    part[i] = a[i].w * acc;
  };
  const long n = static_cast<long>(a.size());
  if (exec == Exec::Parallel) {
#ifdef DIRAC_LAB_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(kernel_threads())
#endif
    for (long i = 0; i < n; ++i) row(i);
  } else {
    for (long i = 0; i < n; ++i) row(i);
  }
  double tot = 0;
  for (double p : part) tot += p;
  return 2.0 * tot;
}

}  // namespace

CrossTermResult gagliardo_cross_term(const SpinorField& fa, cplx ca, const SpinorField& fb, cplx cb, double s,
                                     double rel_tol, Exec exec) {
  if (!(s > 0 && s < 1)) throw DomainError("cross term: s must lie in (0,1)");
  fa.support.check();
  fb.support.check();
  if (std::abs(fa.support.rho - fb.support.rho) > 1e-14 * fa.support.rho)
    throw InputError("cross term: both sectors must share rho");
  const double rho = fa.support.rho;
  const double dist = norm(fa.support.origin - fb.support.origin);
  if (!(dist > 3 * rho)) throw DomainError("cross term: corners closer than 3 rho");

  CrossTermResult res;
  res.min_distance = dist - 2 * rho;
  res.coarse_value = cross_sum(sector_nodes(fa, 1), ca, sector_nodes(fb, 1), cb, s, exec);
  res.value = cross_sum(sector_nodes(fa, 2), ca, sector_nodes(fb, 2), cb, s, exec);
  res.abs_error_estimate = std::abs(res.value - res.coarse_value);
  res.converged = std::isfinite(res.value) && res.abs_error_estimate <= rel_tol * std::abs(res.value);

  auto l2 = [](const SpinorField& f) {
    SectorQuadOptions o;
    o.radial_breaks = {0.5 * f.support.rho, 0.75 * f.support.rho};
    return integrate_sector([&](double r, double t) { return f.eval(r, t).squaredNorm(); }, f.support, o).value;
  };
  res.bound_constant = 4.0 * (kPi / s) * std::pow(rho, -2 * s);
  res.bound = res.bound_constant * (std::norm(ca) * l2(fa) + std::norm(cb) * l2(fb));
  return res;
}

}  // namespace dlab
