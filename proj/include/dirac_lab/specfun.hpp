#pragma once
#include <map>
#include <vector>

namespace dlab {

struct CutoffValue {
  double phi;
  double dphi;
};

// Smooth cutoff: 1 on [0,1/2], 0 on [1,inf), logistic in between.
CutoffValue cutoff_eval(double r);
inline double cutoff(double r) { return cutoff_eval(r).phi; }

// Supported box for J_nu. The corner modes only need nu <= 5, the sector
// bound for small openings needs larger orders.
inline constexpr double kBesselMaxOrder = 40.0;
inline constexpr double kBesselMaxArg = 80.0;

double bessel_j(double nu, double x);
double bessel_first_zero(double nu);

// Immutable cache nu -> j_{nu,1}, built eagerly.
class BesselZeroTable {
 public:
  explicit BesselZeroTable(const std::vector<double>& orders);
  double at(double nu) const;  // throws RangeError when nu was not tabulated
  const std::map<double, double>& entries() const { return zeros_; }

 private:
  std::map<double, double> zeros_;
};

}  // namespace dlab
