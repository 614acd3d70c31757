#include "dirac_lab/quadrature.hpp"

#include "dirac_lab/spinor.hpp"

namespace dlab {

std::vector<TSNode> tanh_sinh_nodes(double a, double b, int level, bool only_new, double tmax) {
  const double kTmax = tmax;
  const double h = std::ldexp(1.0, -level);
  const double L = b - a;
  std::vector<TSNode> out;
  const long kmax = static_cast<long>(std::floor(kTmax / h));
  for (long k = -kmax; k <= kmax; ++k) {
    if (only_new && level > 0 && k % 2 == 0) continue;
    const double t = k * h;
    const double u = 0.5 * kPi * std::sinh(t);
    const double ch = std::cosh(u);
    const double w = h * 0.5 * L * 0.5 * kPi * std::cosh(t) / (ch * ch);
    double x;
    if (u < 0) x = a + L / (1.0 + std::exp(-2.0 * u));
    else x = b - L / (1.0 + std::exp(2.0 * u));
    out.push_back({x, w});
  }
  return out;
}

}  // namespace dlab
