#pragma once
#include <vector>

#include "dirac_lab/spinor.hpp"

namespace dlab {

// Truncated family {c_j^+, c_j^-} over concave corners j in `window`,
// flattened to one complex scalar per corner and sign.
struct ModeCoefficients {
  std::vector<long> window;
  std::vector<cplx> c_plus, c_minus;
  std::vector<double> omegas;

  size_t size() const { return window.size(); }
  void check() const;  // lengths agree, omegas concave; throws
};

}  // namespace dlab
