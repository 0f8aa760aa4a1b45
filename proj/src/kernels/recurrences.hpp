#pragma once

// Single recurrence steps shared by the scalar kernels and the pointwise
// special functions, so both paths round identically. The AVX2 kernels
// reproduce these exact operation sequences with intrinsics.

namespace bandlim::detail {

// (n+1) P_{n+1} = (2n+1) t P_n - n P_{n-1}
inline double legendre_step(int n, double t, double p_n, double p_nm1) {
  const double a = static_cast<double>(2 * n + 1) * t;
  const double b = a * p_n;
  const double c = static_cast<double>(n) * p_nm1;
  return (b - c) / static_cast<double>(n + 1);
}

// j_{k+1} = ((2k+1)/z) j_k - j_{k-1}
inline double bessel_step(int k, double z, double j_k, double j_km1) {
  const double a = static_cast<double>(2 * k + 1) / z;
  return a * j_k - j_km1;
}

inline double bessel_j0(double z, double s) { return s / z; }

inline double bessel_j1(double z, double s, double c) {
  const double j0 = s / z;
  return j0 / z - c / z;
}

}  // namespace bandlim::detail
