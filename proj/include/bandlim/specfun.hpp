#pragma once

#include <span>
#include <vector>

#include "bandlim/quadrature.hpp"

namespace bandlim {

/// Largest order accepted by the Legendre and spherical-Bessel routines.
inline constexpr int kMaxOrder = 256;

/// P_n(t) by the three-term recurrence. DomainError if |t| > 1.
double legendre_p(int n, double t);

/// [P_0(t), ..., P_nmax(t)] in one recurrence pass.
std::vector<double> legendre_all(int nmax, double t);

/// Spherical Bessel function j_n(z) for real z.
///
/// |z| < 0.5 uses the ascending series, |z| > n + 2 the upward recurrence from
/// j_0 and j_1, everything in between a downward Miller recurrence. Negative z
/// goes through j_n(-z) = (-1)^n j_n(z).
double spherical_j(int n, double z);

/// [j_0(z), ..., j_nmax(z)] in one stable pass.
std::vector<double> spherical_j_all(int nmax, double z);

/// out[n * z.size() + i] = j_n(z[i]); dispatches the upward-recurrence points to
/// the batch kernel and the rest to spherical_j_all.
void spherical_j_table(int nmax, std::span<const double> z, std::span<double> out);

/// Gamma(k / 2) for k >= 1 by Gamma(x + 1) = x Gamma(x) from Gamma(1) = 1, Gamma(1/2) = sqrt(pi).
double gamma_half_integer(int twice_x);

/// J_{n+1/2}(z) from the Poisson integral
///   J_nu(z) = (z/2)^nu / (Gamma(nu + 1/2) Gamma(1/2)) int_0^pi cos(z cos th) sin^{2 nu} th dth,
/// evaluated with `rule` mapped onto [0, pi]. DomainError if z <= 0.
double half_integer_bessel_via_poisson(int n, double z, const QuadratureRule& rule);

}  // namespace bandlim
