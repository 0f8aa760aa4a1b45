#pragma once

// Per-ISA kernel entry points. The dispatcher in dispatch.cpp routes the public
// bandlim::kernels functions here; tests call both sides to check equivalence.

#include <complex>
#include <span>

namespace bandlim::kernels {

#define BANDLIM_KERNEL_DECLS                                                                      \
  void legendre_table(int nmax, std::span<const double> t, std::span<double> out);               \
  void spherical_j_upward_table(int nmax, std::span<const double> z,                             \
                                std::span<const double> sin_z, std::span<const double> cos_z,    \
                                std::span<double> out);                                          \
  void combine_rows(std::span<const std::complex<double>> coeffs, std::span<const double> table, \
                    std::span<std::complex<double>> out);                                        \
  std::complex<double> weighted_sum(std::span<const double> w,                                   \
                                    std::span<const std::complex<double>> v);

namespace scalar {
BANDLIM_KERNEL_DECLS
}

#if defined(BANDLIM_HAVE_AVX2)
namespace avx2 {
BANDLIM_KERNEL_DECLS
}
#endif

#undef BANDLIM_KERNEL_DECLS

}  // namespace bandlim::kernels
