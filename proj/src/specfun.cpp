#include "bandlim/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bandlim/errors.hpp"
#include "bandlim/kernels.hpp"
#include "kernels/recurrences.hpp"

namespace bandlim {

namespace {

constexpr double kSeriesRadius = 0.5;
constexpr double kRescaleAbove = 1e200;

void check_order(int n) {
  if (n < 0 || n > kMaxOrder) {
    throw InvalidOrder("order " + std::to_string(n) + " outside [0, " +
                       std::to_string(kMaxOrder) + "]");
  }
}

void check_unit_interval(double t) {
  if (!(std::abs(t) <= 1.0)) {
    throw DomainError("Legendre argument t = " + std::to_string(t) + " outside [-1, 1]");
  }
}

double parity_sign(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// Ascending series, z >= 0 small:
//   j_n(z) = z^n / (2n+1)!! * sum_k (-z^2/2)^k / (k! (2n+3)(2n+5)...(2n+2k+1))
double ascending_series(int n, double z) {
  double lead = 1.0;
  for (int k = 1; k <= n; ++k) lead *= z / (2.0 * k + 1.0);
  if (lead == 0.0) return 0.0;
  const double x = -0.5 * z * z;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= x / (static_cast<double>(k) * (2.0 * n + 2.0 * k + 1.0));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return lead * sum;
}

// Downward recurrence from well above max(nmax, z), scaled afterwards against
// whichever of the closed forms j_0, j_1 is larger in magnitude. z > 0.
void miller(int nmax, double z, std::span<double> out) {
  const double top = std::max(static_cast<double>(nmax), z);
  const int start = static_cast<int>(top) + 20 + static_cast<int>(std::ceil(std::sqrt(60.0 * top)));
  double j_kp1 = 0.0;
  double j_k = 1e-300;
  for (int k = start; k > 0; --k) {
    const double j_km1 = (2.0 * k + 1.0) / z * j_k - j_kp1;
    j_kp1 = j_k;
    j_k = j_km1;
    if (k - 1 <= nmax) out[k - 1] = j_km1;
    if (std::abs(j_k) > kRescaleAbove) {
      j_k /= kRescaleAbove;
      j_kp1 /= kRescaleAbove;
      for (int i = k - 1; i <= nmax; ++i) out[i] /= kRescaleAbove;
    }
  }
  const double s = std::sin(z);
  const double c = std::cos(z);
  const double j0 = detail::bessel_j0(z, s);
  const double j1 = detail::bessel_j1(z, s, c);
  // out[1] is only meaningful when nmax >= 1; otherwise the last j_kp1 holds j_1.
  const double rec1 = nmax >= 1 ? out[1] : j_kp1;
  const double scale = std::abs(j0) >= std::abs(j1) ? j0 / out[0] : j1 / rec1;
  for (int i = 0; i <= nmax; ++i) out[i] *= scale;
}

// z >= 0.
void spherical_j_all_nonneg(int nmax, double z, std::span<double> out) {
  if (z < kSeriesRadius) {
    for (int k = 0; k <= nmax; ++k) out[k] = ascending_series(k, z);
    return;
  }
  if (z > nmax + 2.0) {
    const double s = std::sin(z);
    const double c = std::cos(z);
    out[0] = detail::bessel_j0(z, s);
    if (nmax == 0) return;
    out[1] = detail::bessel_j1(z, s, c);
    for (int k = 1; k < nmax; ++k) out[k + 1] = detail::bessel_step(k, z, out[k], out[k - 1]);
    return;
  }
  miller(nmax, z, out);
}

}  // namespace

double legendre_p(int n, double t) {
  check_order(n);
  check_unit_interval(t);
  if (n == 0) return 1.0;
  double p_nm1 = 1.0;
  double p_n = t;
  for (int k = 1; k < n; ++k) {
    const double next = detail::legendre_step(k, t, p_n, p_nm1);
    p_nm1 = p_n;
    p_n = next;
  }
  return p_n;
}

std::vector<double> legendre_all(int nmax, double t) {
  check_order(nmax);
  check_unit_interval(t);
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1);
  kernels::legendre_table(nmax, std::span<const double>(&t, 1), out);
  return out;
}

double spherical_j(int n, double z) {
  check_order(n);
  if (!std::isfinite(z)) throw DomainError("spherical_j requires finite z");
  const double az = std::abs(z);
  const double sign = z < 0.0 ? parity_sign(n) : 1.0;
  if (az < kSeriesRadius) return sign * ascending_series(n, az);
  if (az > n + 2.0) {
    const double s = std::sin(az);
    const double c = std::cos(az);
    double j_km1 = detail::bessel_j0(az, s);
    if (n == 0) return sign * j_km1;
    double j_k = detail::bessel_j1(az, s, c);
    for (int k = 1; k < n; ++k) {
      const double next = detail::bessel_step(k, az, j_k, j_km1);
      j_km1 = j_k;
      j_k = next;
    }
    return sign * j_k;
  }
  std::vector<double> table(static_cast<std::size_t>(n) + 1);
  miller(n, az, table);
  return sign * table[n];
}

std::vector<double> spherical_j_all(int nmax, double z) {
  check_order(nmax);
  if (!std::isfinite(z)) throw DomainError("spherical_j_all requires finite z");
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1);
  spherical_j_all_nonneg(nmax, std::abs(z), out);
  if (z < 0.0) {
    for (int k = 1; k <= nmax; k += 2) out[k] = -out[k];
  }
  return out;
}

void spherical_j_table(int nmax, std::span<const double> z, std::span<double> out) {
  check_order(nmax);
  const std::size_t m = z.size();
  if (out.size() != static_cast<std::size_t>(nmax + 1) * m) {
    throw ValidationError("spherical_j_table: output size mismatch");
  }
  std::vector<std::size_t> fast;
  fast.reserve(m);
  std::vector<double> column(static_cast<std::size_t>(nmax) + 1);
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::isfinite(z[i])) throw DomainError("spherical_j_table requires finite z");
    const double az = std::abs(z[i]);
    if (az > nmax + 2.0 && az >= kSeriesRadius) {
      fast.push_back(i);
      continue;
    }
    spherical_j_all_nonneg(nmax, az, column);
    for (int n = 0; n <= nmax; ++n) {
      const double sign = z[i] < 0.0 ? parity_sign(n) : 1.0;
      out[static_cast<std::size_t>(n) * m + i] = sign * column[n];
    }
  }
  if (fast.empty()) return;
  const std::size_t f = fast.size();
  std::vector<double> az(f), s(f), c(f), table((static_cast<std::size_t>(nmax) + 1) * f);
  for (std::size_t k = 0; k < f; ++k) {
    az[k] = std::abs(z[fast[k]]);
    s[k] = std::sin(az[k]);
    c[k] = std::cos(az[k]);
  }
  kernels::spherical_j_upward_table(nmax, az, s, c, table);
  for (int n = 0; n <= nmax; ++n) {
    for (std::size_t k = 0; k < f; ++k) {
      const double sign = z[fast[k]] < 0.0 ? parity_sign(n) : 1.0;
      out[static_cast<std::size_t>(n) * m + fast[k]] = sign * table[static_cast<std::size_t>(n) * f + k];
    }
  }
}

double gamma_half_integer(int twice_x) {
  if (twice_x < 1) throw DomainError("gamma_half_integer needs a positive argument");
  // Gamma(x + 1) = x Gamma(x), climbing from Gamma(1) or Gamma(1/2).
  double x = (twice_x % 2 == 0) ? 1.0 : 0.5;
  double g = (twice_x % 2 == 0) ? 1.0 : std::sqrt(std::numbers::pi);
  while (2.0 * x < twice_x) {
    g *= x;
    x += 1.0;
  }
  return g;
}

double half_integer_bessel_via_poisson(int n, double z, const QuadratureRule& rule) {
  check_order(n);
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw DomainError("Poisson integral needs z > 0, got " + std::to_string(z));
  }
  // theta = pi (x + 1) / 2 maps [-1, 1] onto [0, pi].
  const double half_pi = 0.5 * std::numbers::pi;
  const auto nodes = rule.nodes();
  const auto weights = rule.weights();
  double integral = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double theta = half_pi * (nodes[i] + 1.0);
    const double s = std::sin(theta);
    integral += weights[i] * std::cos(z * std::cos(theta)) * std::pow(s, 2 * n + 1);
  }
  integral *= half_pi;
  const double nu = n + 0.5;
  // Gamma(nu + 1/2) = Gamma(n + 1), Gamma(1/2) = sqrt(pi).
  const double prefactor =
      std::pow(0.5 * z, nu) / (gamma_half_integer(2 * n + 2) * gamma_half_integer(1));
  return prefactor * integral;
}

}  // namespace bandlim
