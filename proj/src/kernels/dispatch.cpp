#include <atomic>

#include "bandlim/kernels.hpp"
#include "variants.hpp"

namespace bandlim::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(BANDLIM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa detect() noexcept { return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar; }

std::atomic<Isa>& selected() noexcept {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

Isa active_isa() noexcept { return selected().load(std::memory_order_relaxed); }

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Avx2:
      return "avx2";
    case Isa::Scalar:
      break;
  }
  return "scalar";
}

void force_isa(Isa isa) noexcept {
  if (isa == Isa::Avx2 && !cpu_has_avx2()) isa = Isa::Scalar;
  selected().store(isa, std::memory_order_relaxed);
}

#if defined(BANDLIM_HAVE_AVX2)
#define BANDLIM_DISPATCH(call)                                  \
  do {                                                          \
    if (active_isa() == Isa::Avx2) return avx2::call;           \
    return scalar::call;                                        \
  } while (false)
#else
#define BANDLIM_DISPATCH(call) return scalar::call
#endif

void legendre_table(int nmax, std::span<const double> t, std::span<double> out) {
  BANDLIM_DISPATCH(legendre_table(nmax, t, out));
}

void spherical_j_upward_table(int nmax, std::span<const double> z, std::span<const double> sin_z,
                              std::span<const double> cos_z, std::span<double> out) {
  BANDLIM_DISPATCH(spherical_j_upward_table(nmax, z, sin_z, cos_z, out));
}

void combine_rows(std::span<const std::complex<double>> coeffs, std::span<const double> table,
                  std::span<std::complex<double>> out) {
  BANDLIM_DISPATCH(combine_rows(coeffs, table, out));
}

std::complex<double> weighted_sum(std::span<const double> w,
                                  std::span<const std::complex<double>> v) {
  BANDLIM_DISPATCH(weighted_sum(w, v));
}

#undef BANDLIM_DISPATCH

}  // namespace bandlim::kernels
