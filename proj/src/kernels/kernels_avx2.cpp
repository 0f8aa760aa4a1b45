// Compiled with -mavx2 only (no -mfma): every multiply and add below rounds
// exactly like its counterpart in kernels_scalar.cpp.

#include <immintrin.h>

#include <cassert>

#include "recurrences.hpp"
#include "variants.hpp"

namespace bandlim::kernels::avx2 {

namespace {

constexpr std::size_t kLanes = 4;

// [re0 re1 re2 re3], [im0 im1 im2 im3] -> four interleaved complex values at dst.
inline void store_complex4(std::complex<double>* dst, __m256d re, __m256d im) {
  const __m256d lo = _mm256_unpacklo_pd(re, im);
  const __m256d hi = _mm256_unpackhi_pd(re, im);
  auto* d = reinterpret_cast<double*>(dst);
  _mm256_storeu_pd(d, _mm256_permute2f128_pd(lo, hi, 0x20));
  _mm256_storeu_pd(d + 4, _mm256_permute2f128_pd(lo, hi, 0x31));
}

}  // namespace

void legendre_table(int nmax, std::span<const double> t, std::span<double> out) {
  const std::size_t m = t.size();
  assert(out.size() == static_cast<std::size_t>(nmax + 1) * m);
  for (std::size_t i = 0; i < m; ++i) out[i] = 1.0;
  if (nmax == 0) return;
  for (std::size_t i = 0; i < m; ++i) out[m + i] = t[i];
  const std::size_t vec_end = m - m % kLanes;
  for (int n = 1; n < nmax; ++n) {
    const double* p_nm1 = out.data() + static_cast<std::size_t>(n - 1) * m;
    const double* p_n = p_nm1 + m;
    double* p_np1 = out.data() + static_cast<std::size_t>(n + 1) * m;
    const __m256d two_n_plus_1 = _mm256_set1_pd(static_cast<double>(2 * n + 1));
    const __m256d n_d = _mm256_set1_pd(static_cast<double>(n));
    const __m256d n_plus_1 = _mm256_set1_pd(static_cast<double>(n + 1));
    for (std::size_t i = 0; i < vec_end; i += kLanes) {
      const __m256d tv = _mm256_loadu_pd(t.data() + i);
      const __m256d a = _mm256_mul_pd(two_n_plus_1, tv);
      const __m256d b = _mm256_mul_pd(a, _mm256_loadu_pd(p_n + i));
      const __m256d c = _mm256_mul_pd(n_d, _mm256_loadu_pd(p_nm1 + i));
      _mm256_storeu_pd(p_np1 + i, _mm256_div_pd(_mm256_sub_pd(b, c), n_plus_1));
    }
    for (std::size_t i = vec_end; i < m; ++i) {
      p_np1[i] = detail::legendre_step(n, t[i], p_n[i], p_nm1[i]);
    }
  }
}

void spherical_j_upward_table(int nmax, std::span<const double> z, std::span<const double> sin_z,
                              std::span<const double> cos_z, std::span<double> out) {
  const std::size_t m = z.size();
  assert(out.size() == static_cast<std::size_t>(nmax + 1) * m);
  const std::size_t vec_end = m - m % kLanes;
  for (std::size_t i = 0; i < vec_end; i += kLanes) {
    const __m256d zv = _mm256_loadu_pd(z.data() + i);
    const __m256d j0 = _mm256_div_pd(_mm256_loadu_pd(sin_z.data() + i), zv);
    _mm256_storeu_pd(out.data() + i, j0);
    if (nmax == 0) continue;
    const __m256d c_over_z = _mm256_div_pd(_mm256_loadu_pd(cos_z.data() + i), zv);
    _mm256_storeu_pd(out.data() + m + i, _mm256_sub_pd(_mm256_div_pd(j0, zv), c_over_z));
  }
  for (std::size_t i = vec_end; i < m; ++i) {
    out[i] = detail::bessel_j0(z[i], sin_z[i]);
    if (nmax > 0) out[m + i] = detail::bessel_j1(z[i], sin_z[i], cos_z[i]);
  }
  for (int k = 1; k < nmax; ++k) {
    const double* j_km1 = out.data() + static_cast<std::size_t>(k - 1) * m;
    const double* j_k = j_km1 + m;
    double* j_kp1 = out.data() + static_cast<std::size_t>(k + 1) * m;
    const __m256d two_k_plus_1 = _mm256_set1_pd(static_cast<double>(2 * k + 1));
    for (std::size_t i = 0; i < vec_end; i += kLanes) {
      const __m256d a = _mm256_div_pd(two_k_plus_1, _mm256_loadu_pd(z.data() + i));
      const __m256d next = _mm256_sub_pd(_mm256_mul_pd(a, _mm256_loadu_pd(j_k + i)),
                                         _mm256_loadu_pd(j_km1 + i));
      _mm256_storeu_pd(j_kp1 + i, next);
    }
    for (std::size_t i = vec_end; i < m; ++i) {
      j_kp1[i] = detail::bessel_step(k, z[i], j_k[i], j_km1[i]);
    }
  }
}

void combine_rows(std::span<const std::complex<double>> coeffs, std::span<const double> table,
                  std::span<std::complex<double>> out) {
  const std::size_t m = out.size();
  assert(table.size() >= coeffs.size() * m);
  const std::size_t vec_end = m - m % kLanes;
  for (std::size_t i = 0; i < vec_end; i += kLanes) {
    __m256d re = _mm256_setzero_pd();
    __m256d im = _mm256_setzero_pd();
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
      const __m256d v = _mm256_loadu_pd(table.data() + n * m + i);
      re = _mm256_add_pd(re, _mm256_mul_pd(_mm256_set1_pd(coeffs[n].real()), v));
      im = _mm256_add_pd(im, _mm256_mul_pd(_mm256_set1_pd(coeffs[n].imag()), v));
    }
    store_complex4(out.data() + i, re, im);
  }
  for (std::size_t i = vec_end; i < m; ++i) {
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
  const std::size_t m = w.size();
  const auto* vd = reinterpret_cast<const double*>(v.data());
  // Each accumulator holds [re_a im_a re_b im_b] for two interleaved points.
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d w01 = _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(w.data() + i)),
                                              0b01010000);
    const __m256d w23 = _mm256_permute4x64_pd(
        _mm256_castpd128_pd256(_mm_loadu_pd(w.data() + i + 2)), 0b01010000);
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(w01, _mm256_loadu_pd(vd + 2 * i)));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(w23, _mm256_loadu_pd(vd + 2 * i + 4)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double re = lanes[0] + lanes[2];
  double im = lanes[1] + lanes[3];
  for (; i < m; ++i) {
    re += w[i] * v[i].real();
    im += w[i] * v[i].imag();
  }
  return {re, im};
}

}  // namespace bandlim::kernels::avx2
