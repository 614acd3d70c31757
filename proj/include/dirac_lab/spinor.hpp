#pragma once
#include <complex>
#include <Eigen/Dense>

namespace dlab {

using cplx = std::complex<double>;
using Spinor = Eigen::Vector2cd;
using Mat2 = Eigen::Matrix2cd;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline const cplx kI{0.0, 1.0};

inline Mat2 sigma1() { Mat2 m; m << 0, 1, 1, 0; return m; }
inline Mat2 sigma2() { Mat2 m; m << 0, -kI, kI, 0; return m; }
inline Mat2 sigma3() { Mat2 m; m << 1, 0, 0, -1; return m; }

// sigma . v for a real 2-vector.
inline Mat2 sigma_dot(double v1, double v2) {
  Mat2 m;
  m << 0, cplx(v1, -v2), cplx(v1, v2), 0;
  return m;
}

inline Spinor sigma3_apply(const Spinor& p) { return Spinor(p(0), -p(1)); }

}  // namespace dlab
