#include "bandlim/transform.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "bandlim/errors.hpp"
#include "bandlim/kernels.hpp"
#include "bandlim/specfun.hpp"

namespace bandlim {

namespace {

std::vector<Complex> checked_coeffs(std::vector<Complex> coeffs, const char* kind) {
  if (coeffs.empty()) throw ValidationError(std::string(kind) + " series needs at least one coefficient");
  if (static_cast<int>(coeffs.size()) - 1 > kMaxOrder) {
    throw InvalidOrder(std::string(kind) + " series degree exceeds " + std::to_string(kMaxOrder));
  }
  for (const Complex& c : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw ValidationError(std::string(kind) + " series has a non-finite coefficient");
    }
  }
  return coeffs;
}

// Envelope frequencies of a single spherical Bessel function.
constexpr double kBesselFrequencies[] = {-1.0, 1.0};

LineIntegralParams with_frequencies(LineIntegralParams params, std::vector<double> freqs) {
  params.envelope_frequencies = std::move(freqs);
  return params;
}

double measure_divisor(const LineIntegralParams& params, int mode) {
  if (mode < 0 || mode > kMaxOrder || mode % 2 != 0) {
    throw ValidationError("calibration mode must be an even order, got " + std::to_string(mode));
  }
  std::vector<Complex> coeffs(static_cast<std::size_t>(mode) + 1, 0.0);
  coeffs[mode] = 2.0 * i_pow(mode);
  const BesselSeries image(std::move(coeffs));
  const double raw = integrate_oscillatory_line(image.as_integrand(), 0.0, params).real();
  const double divisor = raw / legendre_p(mode, 0.0);
  if (!(divisor > 0.0) || !std::isfinite(divisor)) {
    throw ValidationError("measured normalization divisor is not positive: " + std::to_string(divisor));
  }
  return divisor;
}

}  // namespace

Complex i_pow(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

// ---------------------------------------------------------------------------
// Series

LegendreSeries::LegendreSeries(std::vector<Complex> coeffs)
    : coeffs_(checked_coeffs(std::move(coeffs), "Legendre")) {}

Complex LegendreSeries::operator()(double t) const {
  Complex out;
  evaluate(std::span<const double>(&t, 1), std::span<Complex>(&out, 1));
  return out;
}

void LegendreSeries::evaluate(std::span<const double> t, std::span<Complex> out) const {
  for (double x : t) {
    if (!(std::abs(x) <= 1.0)) {
      throw DomainError("Legendre series evaluated outside [-1, 1] at t = " + std::to_string(x));
    }
  }
  std::vector<double> table(coeffs_.size() * t.size());
  kernels::legendre_table(degree(), t, table);
  kernels::combine_rows(coeffs_, table, out);
}

Integrand LegendreSeries::as_integrand() const {
  return BatchFunction([self = *this](std::span<const double> t, std::span<Complex> out) {
    self.evaluate(t, out);
  });
}

BesselSeries::BesselSeries(std::vector<Complex> coeffs)
    : coeffs_(checked_coeffs(std::move(coeffs), "Bessel")) {}

Complex BesselSeries::operator()(double z) const {
  Complex out;
  evaluate(std::span<const double>(&z, 1), std::span<Complex>(&out, 1));
  return out;
}

void BesselSeries::evaluate(std::span<const double> z, std::span<Complex> out) const {
  std::vector<double> table(coeffs_.size() * z.size());
  spherical_j_table(degree(), z, table);
  kernels::combine_rows(coeffs_, table, out);
}

Integrand BesselSeries::as_integrand() const {
  return BatchFunction([self = *this](std::span<const double> z, std::span<Complex> out) {
    self.evaluate(z, out);
  });
}

LegendreSeries coeff_bar(const BesselSeries& series) {
  std::vector<Complex> out(series.coeffs().begin(), series.coeffs().end());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] /= 2.0 * i_pow(static_cast<int>(n));
  return LegendreSeries(std::move(out));
}

BesselSeries coeff_unbar(const LegendreSeries& series) {
  std::vector<Complex> out(series.coeffs().begin(), series.coeffs().end());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] *= 2.0 * i_pow(static_cast<int>(n));
  return BesselSeries(std::move(out));
}

// ---------------------------------------------------------------------------
// Configuration

struct TransformConfig::NormCache {
  std::mutex mutex;
  std::vector<std::optional<double>> values =
      std::vector<std::optional<double>>(static_cast<std::size_t>(kMaxOrder) + 1);
};

const QuadratureRule& default_compact_rule() {
  static const QuadratureRule rule = gauss_legendre_rule(64);
  return rule;
}

TransformConfig::TransformConfig(Normalization normalization, LineIntegralParams line_params,
                                 std::optional<QuadratureRule> compact_rule)
    : normalization_(normalization),
      line_params_(std::move(line_params)),
      compact_rule_(compact_rule ? std::move(*compact_rule) : default_compact_rule()),
      norms_(std::make_shared<NormCache>()) {
  line_params_.validate();
  if (normalization_ == Normalization::Calibrated) measured_ = measure_divisor(line_params_, 0);
}

double TransformConfig::divisor() const noexcept {
  return normalization_ == Normalization::Calibrated ? *measured_ : kQuarterDivisor;
}

TransformConfig TransformConfig::with_normalization(Normalization normalization) const {
  TransformConfig copy = *this;
  copy.normalization_ = normalization;
  if (normalization == Normalization::Calibrated && !copy.measured_) {
    copy.measured_ = measure_divisor(copy.line_params_, 0);
  }
  return copy;
}

double TransformConfig::bessel_norm(int n) const {
  if (n < 0 || n > kMaxOrder) throw InvalidOrder("bessel_norm order " + std::to_string(n));
  std::lock_guard lock(norms_->mutex);
  auto& slot = norms_->values[static_cast<std::size_t>(n)];
  if (!slot) slot = bessel_overlap(n, n, line_params_);
  return *slot;
}

// ---------------------------------------------------------------------------
// Transforms

Complex forward_transform_nodes(std::span<const Complex> f_at_nodes, double z,
                                const QuadratureRule& rule) {
  if (f_at_nodes.size() != rule.size()) {
    throw ValidationError("forward_transform_nodes: value count does not match the rule");
  }
  const auto nodes = rule.nodes();
  std::vector<Complex> integrand(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    integrand[i] = f_at_nodes[i] * std::polar(1.0, z * nodes[i]);
  }
  return kernels::weighted_sum(rule.weights(), integrand);
}

Complex forward_transform(const Integrand& f, double z, const TransformConfig& config) {
  if (!std::isfinite(z)) throw DomainError("forward_transform needs finite z");
  const auto& rule = config.compact_rule();
  const auto nodes = rule.nodes();
  std::vector<Complex> values(rule.size());
  f(nodes, values);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag())) {
      throw EvaluationError("f is not finite at t = " + std::to_string(nodes[i]), nodes[i]);
    }
  }
  return forward_transform_nodes(values, z, rule);
}

Complex forward_transform(const LegendreSeries& f, double z, const TransformConfig& config) {
  return forward_transform(f.as_integrand(), z, config);
}

Complex inverse_transform(const Integrand& g, double t, const TransformConfig& config) {
  if (!(std::abs(t) < 1.0)) {
    throw DomainError("inverse transform is defined for |t| < 1, got t = " + std::to_string(t));
  }
  return integrate_oscillatory_line(g, t, config.line_params()) / config.divisor();
}

double calibrate_normalization(const TransformConfig& config, int mode) {
  return measure_divisor(config.line_params(), mode);
}

std::vector<Complex> inverse_at_nodes(const Integrand& g, const TransformConfig& config) {
  const auto nodes = config.compact_rule().nodes();
  std::vector<Complex> out(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) out[i] = inverse_transform(g, nodes[i], config);
  return out;
}

Complex roundtrip(const Integrand& g, double z, const TransformConfig& config) {
  return roundtrip(g, std::span<const double>(&z, 1), config).front();
}

std::vector<Complex> roundtrip(const Integrand& g, std::span<const double> z,
                               const TransformConfig& config) {
  const std::vector<Complex> f = inverse_at_nodes(g, config);
  std::vector<Complex> out;
  out.reserve(z.size());
  for (double zi : z) out.push_back(forward_transform_nodes(f, zi, config.compact_rule()));
  return out;
}

// ---------------------------------------------------------------------------
// Projections and identities

LegendreSeries legendre_projection(const Integrand& f, int nmax, const QuadratureRule& rule) {
  if (nmax < 0 || nmax > kMaxOrder) throw InvalidOrder("projection order " + std::to_string(nmax));
  if (rule.size() < static_cast<std::size_t>(nmax) + 1) {
    throw ValidationError("rule with " + std::to_string(rule.size()) +
                          " points is too small to project onto degree " + std::to_string(nmax));
  }
  const auto nodes = rule.nodes();
  const auto weights = rule.weights();
  const std::size_t m = nodes.size();
  std::vector<Complex> values(m);
  f(nodes, values);
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag())) {
      throw EvaluationError("f is not finite at t = " + std::to_string(nodes[i]), nodes[i]);
    }
  }
  std::vector<double> table((static_cast<std::size_t>(nmax) + 1) * m);
  kernels::legendre_table(nmax, nodes, table);
  std::vector<double> wp(m);
  std::vector<Complex> coeffs(static_cast<std::size_t>(nmax) + 1);
  for (int n = 0; n <= nmax; ++n) {
    for (std::size_t i = 0; i < m; ++i) wp[i] = weights[i] * table[static_cast<std::size_t>(n) * m + i];
    coeffs[n] = 0.5 * (2.0 * n + 1.0) * kernels::weighted_sum(wp, values);
  }
  return LegendreSeries(std::move(coeffs));
}

std::vector<double> product_frequencies(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out;
  for (double x : a) {
    for (double y : b) out.push_back(x + y);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(x)); }),
            out.end());
  return out;
}

double bessel_overlap(int n, int m, const LineIntegralParams& params) {
  const int top = std::max(n, m);
  if (std::min(n, m) < 0 || top > kMaxOrder) throw InvalidOrder("bessel_overlap order out of range");
  const BatchFunction product = [n, m, top](std::span<const double> y, std::span<Complex> out) {
    std::vector<double> table((static_cast<std::size_t>(top) + 1) * y.size());
    spherical_j_table(top, y, table);
    for (std::size_t i = 0; i < y.size(); ++i) {
      out[i] = table[static_cast<std::size_t>(n) * y.size() + i] *
               table[static_cast<std::size_t>(m) * y.size() + i];
    }
  };
  const auto freqs = product_frequencies(params.envelope_frequencies, params.envelope_frequencies);
  return integrate_oscillatory_line(product, 0.0, with_frequencies(params, freqs)).real();
}

RealMatrix orthogonality_matrix_j(int nmax, const LineIntegralParams& params) {
  if (nmax < 0 || nmax > kMaxOrthogonalityOrder) {
    throw InvalidOrder("orthogonality_matrix_j supports nmax <= " +
                       std::to_string(kMaxOrthogonalityOrder));
  }
  RealMatrix gram(nmax + 1, nmax + 1);
  for (int n = 0; n <= nmax; ++n) {
    for (int m = n; m <= nmax; ++m) {
      gram(n, m) = bessel_overlap(n, m, params);
      gram(m, n) = gram(n, m);
    }
  }
  return gram;
}

BesselSeries bessel_projection(const Integrand& g, int nmax, const TransformConfig& config) {
  if (nmax < 0 || nmax > kMaxOrder) throw InvalidOrder("projection order " + std::to_string(nmax));
  const auto freqs = product_frequencies(config.line_params().envelope_frequencies, kBesselFrequencies);
  const LineIntegralParams params = with_frequencies(config.line_params(), freqs);
  std::vector<Complex> coeffs(static_cast<std::size_t>(nmax) + 1);
  for (int n = 0; n <= nmax; ++n) {
    const BatchFunction product = [&g, n](std::span<const double> y, std::span<Complex> out) {
      g(y, out);
      std::vector<double> table((static_cast<std::size_t>(n) + 1) * y.size());
      spherical_j_table(n, y, table);
      for (std::size_t i = 0; i < y.size(); ++i) out[i] *= table[static_cast<std::size_t>(n) * y.size() + i];
    };
    coeffs[n] = integrate_oscillatory_line(product, 0.0, params) / config.bessel_norm(n);
  }
  return BesselSeries(std::move(coeffs));
}

Complex bauer_partial_sum(double z, double t, int N) {
  if (!(std::abs(t) <= 1.0)) throw DomainError("Bauer expansion needs |t| <= 1");
  const std::vector<double> p = legendre_all(N, t);
  const std::vector<double> j = spherical_j_all(N, z);
  Complex sum = 0.0;
  for (int n = 0; n <= N; ++n) sum += (2.0 * n + 1.0) * i_pow(n) * (p[n] * j[n]);
  return sum;
}

}  // namespace bandlim
