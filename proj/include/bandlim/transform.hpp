#pragma once

// The transform pair between functions on [-1, 1] and band-limited functions on
// the real line:
//
//   forward:  g(z) = int_{-1}^{1} f(t) e^{izt} dt
//   inverse:  f(t) = (1/C) int_{-inf}^{inf} g(y) e^{-iyt} dy,   |t| < 1
//
// with Legendre modes P_n mapping to 2 i^n j_n. The divisor C is either the
// historical constant 4 or the value measured by calibrate_normalization.

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "bandlim/quadrature.hpp"

namespace bandlim {

/// f(t) = sum_n coeffs[n] P_n(t) on [-1, 1].
class LegendreSeries {
 public:
  /// Throws ValidationError if empty or any coefficient is not finite.
  explicit LegendreSeries(std::vector<Complex> coeffs);

  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  /// DomainError if |t| > 1.
  Complex operator()(double t) const;
  void evaluate(std::span<const double> t, std::span<Complex> out) const;
  Integrand as_integrand() const;

 private:
  std::vector<Complex> coeffs_;
};

/// g(z) = sum_n coeffs[n] j_n(z) on the real line.
class BesselSeries {
 public:
  explicit BesselSeries(std::vector<Complex> coeffs);

  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  Complex operator()(double z) const;
  void evaluate(std::span<const double> z, std::span<Complex> out) const;
  Integrand as_integrand() const;

 private:
  std::vector<Complex> coeffs_;
};

/// c̄_n = c_n / (2 i^n).
LegendreSeries coeff_bar(const BesselSeries& series);
/// c_n = 2 i^n c̄_n. Also the exact forward image of a Legendre series.
BesselSeries coeff_unbar(const LegendreSeries& series);

enum class Normalization {
  /// C = 4, the constant as historically printed.
  PaperQuarter,
  /// C = C*, measured so that inverse(forward(P_0)) = P_0 at t = 0.
  Calibrated,
};

inline constexpr double kQuarterDivisor = 4.0;

/// Immutable after construction; copies share the lazily filled K_n table, which
/// is guarded so that concurrent readers compute each entry exactly once.
class TransformConfig {
 public:
  /// A Calibrated config measures C* here, eagerly. May throw NoConvergence.
  explicit TransformConfig(Normalization normalization = Normalization::Calibrated,
                           LineIntegralParams line_params = {},
                           std::optional<QuadratureRule> compact_rule = std::nullopt);

  Normalization normalization() const noexcept { return normalization_; }
  const LineIntegralParams& line_params() const noexcept { return line_params_; }
  const QuadratureRule& compact_rule() const noexcept { return compact_rule_; }

  /// Divisor used by inverse_transform: 4 or C*.
  double divisor() const noexcept;
  /// C* when it has been measured (always for Calibrated configs).
  std::optional<double> measured_divisor() const noexcept { return measured_; }

  /// Same parameters, other convention. Switching to Calibrated measures C* if needed.
  TransformConfig with_normalization(Normalization normalization) const;

  /// K_n = int j_n(y)^2 dy, measured on first use and cached.
  double bessel_norm(int n) const;

 private:
  struct NormCache;

  Normalization normalization_;
  LineIntegralParams line_params_;
  QuadratureRule compact_rule_;
  std::optional<double> measured_;
  std::shared_ptr<NormCache> norms_;
};

/// Default compact rule (64 Gauss-Legendre points).
const QuadratureRule& default_compact_rule();

/// int_{-1}^{1} f(t) e^{izt} dt with the config's compact rule.
Complex forward_transform(const Integrand& f, double z, const TransformConfig& config);
Complex forward_transform(const LegendreSeries& f, double z, const TransformConfig& config);
/// Forward transform of a function known only by its values at the rule's nodes.
Complex forward_transform_nodes(std::span<const Complex> f_at_nodes, double z,
                                const QuadratureRule& rule);

/// (1/C) int g(y) e^{-iyt} dy. DomainError unless |t| < 1.
Complex inverse_transform(const Integrand& g, double t, const TransformConfig& config);

/// C* = int (2 i^m j_m)(y) dy / P_m(0), the divisor making inverse(forward(P_m))(0) = P_m(0).
/// `mode` must be even (P_m(0) = 0 otherwise). Only the config's line parameters are used.
double calibrate_normalization(const TransformConfig& config, int mode = 0);

/// c̄_n = (2n+1)/2 int f P_n dt. ValidationError if the rule has fewer than nmax + 1 points.
LegendreSeries legendre_projection(const Integrand& f, int nmax, const QuadratureRule& rule);

/// c_n = int g j_n dy / K_n with K_n from config.bessel_norm.
BesselSeries bessel_projection(const Integrand& g, int nmax, const TransformConfig& config);

/// sum_{n<=N} (2n+1) i^n P_n(t) j_n(z). DomainError if |t| > 1.
Complex bauer_partial_sum(double z, double t, int N);

/// Inverse transform evaluated at every node of the config's compact rule.
std::vector<Complex> inverse_at_nodes(const Integrand& g, const TransformConfig& config);

/// forward(inverse(g)) at z.
Complex roundtrip(const Integrand& g, double z, const TransformConfig& config);
/// Same for several z, sharing one inverse pass.
std::vector<Complex> roundtrip(const Integrand& g, std::span<const double> z,
                               const TransformConfig& config);

/// Dense row-major real matrix.
struct RealMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  RealMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}
  double& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }
};

inline constexpr int kMaxOrthogonalityOrder = 16;

/// Entry (n, m) = measured int_{-inf}^{inf} j_n(y) j_m(y) dy, n, m <= nmax <= 16.
/// `params` describe a single band-limited envelope; the product frequencies are derived.
RealMatrix orthogonality_matrix_j(int nmax, const LineIntegralParams& params = {});

/// int j_n j_m dy, the entry routine shared by the matrix and the K_n cache.
double bessel_overlap(int n, int m, const LineIntegralParams& params = {});

/// Frequencies of a product of two envelopes with the given frequency sets.
std::vector<double> product_frequencies(std::span<const double> a, std::span<const double> b);

/// i^n, exactly.
Complex i_pow(int n);

}  // namespace bandlim
