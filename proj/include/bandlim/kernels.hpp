#pragma once

// Batch arithmetic kernels shared by the special-function and quadrature code.
//
// Each kernel has a portable scalar reference and, on x86-64, an AVX2 variant.
// The variant is chosen once at first use from CPUID. The AVX2 variants of the
// table kernels perform the same IEEE operations in the same order as the
// scalar ones and therefore produce bit-identical output; weighted_sum
// reassociates the reduction and agrees to rounding.

#include <complex>
#include <span>
#include <string_view>

namespace bandlim::kernels {

enum class Isa { Scalar, Avx2 };

/// Instruction set the dispatcher selected for this process.
Isa active_isa() noexcept;
std::string_view isa_name(Isa isa) noexcept;

/// Forces a particular variant (Avx2 is ignored when the CPU lacks it).
/// Intended for tests and benchmarks; not thread-safe against concurrent kernel calls.
void force_isa(Isa isa) noexcept;

/// out[n * t.size() + i] = P_n(t[i]) for n = 0..nmax, by the three-term recurrence.
/// out.size() must be (nmax + 1) * t.size().
void legendre_table(int nmax, std::span<const double> t, std::span<double> out);

/// out[n * z.size() + i] = j_n(z[i]) for n = 0..nmax by upward recurrence seeded
/// from sin/cos. Only accurate where |z[i]| > nmax; callers must check.
void spherical_j_upward_table(int nmax, std::span<const double> z, std::span<const double> sin_z,
                              std::span<const double> cos_z, std::span<double> out);

/// out[i] = sum_n coeffs[n] * table[n * out.size() + i]  (complex coefficients, real table).
void combine_rows(std::span<const std::complex<double>> coeffs, std::span<const double> table,
                  std::span<std::complex<double>> out);

/// sum_i w[i] * v[i].
std::complex<double> weighted_sum(std::span<const double> w,
                                  std::span<const std::complex<double>> v);

}  // namespace bandlim::kernels
