#include <cassert>

#include "recurrences.hpp"
#include "variants.hpp"

namespace bandlim::kernels::scalar {

void legendre_table(int nmax, std::span<const double> t, std::span<double> out) {
  const std::size_t m = t.size();
  assert(out.size() == static_cast<std::size_t>(nmax + 1) * m);
  for (std::size_t i = 0; i < m; ++i) out[i] = 1.0;
  if (nmax == 0) return;
  for (std::size_t i = 0; i < m; ++i) out[m + i] = t[i];
  for (int n = 1; n < nmax; ++n) {
    const double* p_nm1 = out.data() + static_cast<std::size_t>(n - 1) * m;
    const double* p_n = p_nm1 + m;
    double* p_np1 = out.data() + static_cast<std::size_t>(n + 1) * m;
    for (std::size_t i = 0; i < m; ++i) {
      p_np1[i] = detail::legendre_step(n, t[i], p_n[i], p_nm1[i]);
    }
  }
}

void spherical_j_upward_table(int nmax, std::span<const double> z, std::span<const double> sin_z,
                              std::span<const double> cos_z, std::span<double> out) {
  const std::size_t m = z.size();
  assert(out.size() == static_cast<std::size_t>(nmax + 1) * m);
  for (std::size_t i = 0; i < m; ++i) out[i] = detail::bessel_j0(z[i], sin_z[i]);
  if (nmax == 0) return;
  for (std::size_t i = 0; i < m; ++i) out[m + i] = detail::bessel_j1(z[i], sin_z[i], cos_z[i]);
  for (int k = 1; k < nmax; ++k) {
    const double* j_km1 = out.data() + static_cast<std::size_t>(k - 1) * m;
    const double* j_k = j_km1 + m;
    double* j_kp1 = out.data() + static_cast<std::size_t>(k + 1) * m;
    for (std::size_t i = 0; i < m; ++i) {
      j_kp1[i] = detail::bessel_step(k, z[i], j_k[i], j_km1[i]);
    }
  }
}

void combine_rows(std::span<const std::complex<double>> coeffs, std::span<const double> table,
                  std::span<std::complex<double>> out) {
  const std::size_t m = out.size();
  assert(table.size() >= coeffs.size() * m);
  for (std::size_t i = 0; i < m; ++i) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
      const double v = table[n * m + i];
      const double pr = coeffs[n].real() * v;
      const double pi = coeffs[n].imag() * v;
      re = re + pr;
      im = im + pi;
    }
    out[i] = {re, im};
  }
}

std::complex<double> weighted_sum(std::span<const double> w,
                                  std::span<const std::complex<double>> v) {
  assert(w.size() == v.size());
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    re += w[i] * v[i].real();
    im += w[i] * v[i].imag();
  }
  return {re, im};
}

}  // namespace bandlim::kernels::scalar
