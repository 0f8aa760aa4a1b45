// Conditionally convergent integrals over the real line.
//
// The envelopes this library integrates (finite spherical-Bessel series, Fourier
// images of functions on [-1, 1], products of two such) behave for large |y| like
//     sum_w e^{iwy} (a_1/y + a_2/y^2 + ...)
// with w drawn from a small known set. Each tail integral int_{R0}^{R} is
// tabulated on half-period segments and the limit R -> inf is taken either by
// Euler averaging (one alternating frequency) or by fitting the partial integrals
// to the exact tails int_R^inf e^{iwy} y^{-k} dy = R^{1-k} E_k(-iwR).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "bandlim/errors.hpp"
#include "bandlim/kernels.hpp"
#include "bandlim/quadrature.hpp"

namespace bandlim {

namespace {

constexpr int kSegmentPoints = 24;
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kFrequencyMerge = 1e-12;

const QuadratureRule& segment_rule() {
  static const QuadratureRule rule = gauss_legendre_rule(kSegmentPoints);
  return rule;
}

std::vector<double> distinct(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  std::vector<double> out;
  for (double v : values) {
    if (out.empty() || std::abs(v - out.back()) > kFrequencyMerge * std::max(1.0, std::abs(v))) {
      out.push_back(v);
    }
  }
  return out;
}

// Integral of sign-reflected, modulated envelope over [a, b]:
//   side = +1: int_a^b env(u) e^{-iut} du,  side = -1: int_a^b env(-u) e^{+iut} du.
struct Segmenter {
  const Integrand& envelope;
  double t;
  int side;
  std::vector<double> y = std::vector<double>(kSegmentPoints);
  std::vector<Complex> values = std::vector<Complex>(kSegmentPoints);

  // Returns {integral, integral of |integrand|}.
  std::pair<Complex, double> operator()(double a, double b) {
    const auto& rule = segment_rule();
    const auto nodes = rule.nodes();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int i = 0; i < kSegmentPoints; ++i) y[i] = side * (mid + half * nodes[i]);
    envelope(y, values);
    double abs_sum = 0.0;
    for (int i = 0; i < kSegmentPoints; ++i) {
      if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag())) {
        throw EvaluationError("envelope is not finite at y = " + std::to_string(y[i]), y[i]);
      }
      values[i] *= std::polar(1.0, -y[i] * t);
      abs_sum += rule.weights()[i] * std::abs(values[i]);
    }
    return {half * kernels::weighted_sum(rule.weights(), values), half * abs_sum};
  }
};

// int_R^inf e^{iwy} y^{-k} dy
Complex oscillatory_tail(int k, double w, double R) {
  if (w == 0.0) return std::pow(R, 1.0 - k) / (k - 1.0);
  return std::pow(R, 1.0 - k) * exponential_integral(k, Complex(0.0, -w * R));
}

struct TailResult {
  Complex value;
  int segments;
};

[[noreturn]] void give_up(const char* method, Complex previous, Complex last, int segments) {
  throw NoConvergence(std::string(method) + " tail acceleration did not converge within " +
                          std::to_string(segments) + " segments",
                      previous, last);
}

TailResult euler_tail(Segmenter& seg, double r0, double length, const LineIntegralParams& p,
                      double scale) {
  const auto m = static_cast<std::size_t>(p.acceleration_terms);
  std::vector<Complex> partial;
  partial.reserve(static_cast<std::size_t>(p.max_segments));
  std::vector<Complex> work(m);
  Complex sum = 0.0;
  Complex previous = 0.0;
  Complex estimate = 0.0;
  bool have_previous = false;
  for (int k = 0; k < p.max_segments; ++k) {
    sum += seg(r0 + k * length, r0 + (k + 1) * length).first;
    partial.push_back(sum);
    if (partial.size() < m) continue;
    // Repeated pairwise averaging of the last m partial sums.
    std::copy(partial.end() - static_cast<std::ptrdiff_t>(m), partial.end(), work.begin());
    for (std::size_t level = m - 1; level > 0; --level) {
      for (std::size_t i = 0; i < level; ++i) work[i] = 0.5 * (work[i] + work[i + 1]);
    }
    estimate = work[0];
    if (have_previous && std::abs(estimate - previous) <= p.tol * scale) {
      return {estimate, k + 1};
    }
    previous = estimate;
    have_previous = true;
  }
  give_up("Euler", previous, estimate, p.max_segments);
}

TailResult fitted_tail(Segmenter& seg, double r0, double length, std::span<const double> freqs,
                       const LineIntegralParams& p, double scale) {
  const int order = std::max(2, p.acceleration_terms / 2);
  struct Column {
    double w;
    int k;
  };
  std::vector<Column> columns;
  for (double w : freqs) {
    // A non-oscillating 1/y term would make the integral diverge.
    for (int k = (w == 0.0 ? 2 : 1); k <= order; ++k) columns.push_back({w, k});
  }
  const auto unknowns = static_cast<Eigen::Index>(columns.size() + 1);

  std::vector<double> radius{r0};
  std::vector<Complex> partial{0.0};
  std::vector<std::vector<Complex>> basis;  // tails at each radius, filled lazily
  auto basis_row = [&](std::size_t i) -> const std::vector<Complex>& {
    while (basis.size() <= i) {
      const double R = radius[basis.size()];
      std::vector<Complex> row(columns.size());
      for (std::size_t c = 0; c < columns.size(); ++c) {
        row[c] = oscillatory_tail(columns[c].k, columns[c].w, R);
      }
      basis.push_back(std::move(row));
    }
    return basis[i];
  };

  Complex previous = 0.0;
  Complex estimate = 0.0;
  bool have_previous = false;
  constexpr int kCheckEvery = 4;
  for (int k = 0; k < p.max_segments; ++k) {
    const double a = r0 + k * length;
    const double b = a + length;
    partial.push_back(partial.back() + seg(a, b).first);
    radius.push_back(b);
    if ((k + 1) % kCheckEvery != 0) continue;

    // Fit over the trailing half of the radii tabulated so far.
    const double r_hi = radius.back();
    if (r_hi < 2.0 * r0) continue;
    const auto first = static_cast<std::size_t>(
        std::lower_bound(radius.begin(), radius.end(), 0.5 * r_hi) - radius.begin());
    const auto rows = static_cast<Eigen::Index>(radius.size() - first);
    if (rows < 2 * unknowns) continue;

    // partial(R) = I - sum_c alpha_c tail_c(R)
    Eigen::MatrixXcd A(rows, unknowns);
    Eigen::VectorXcd rhs(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto& row = basis_row(first + static_cast<std::size_t>(r));
      A(r, 0) = 1.0;
      for (std::size_t c = 0; c < columns.size(); ++c) A(r, static_cast<Eigen::Index>(c) + 1) = -row[c];
      rhs(r) = partial[first + static_cast<std::size_t>(r)];
    }
    Eigen::VectorXd col_scale = A.colwise().norm().transpose();
    for (Eigen::Index c = 0; c < unknowns; ++c) {
      if (col_scale(c) == 0.0) col_scale(c) = 1.0;
      A.col(c) /= col_scale(c);
    }
    const Eigen::VectorXcd solution = A.colPivHouseholderQr().solve(rhs);
    estimate = solution(0) / col_scale(0);
    if (have_previous && std::abs(estimate - previous) <= p.tol * scale) {
      return {estimate, k + 1};
    }
    previous = estimate;
    have_previous = true;
  }
  give_up("Frequency-fit", previous, estimate, p.max_segments);
}

}  // namespace

void LineIntegralParams::validate() const {
  if (!(initial_halfwidth > 0.0) || !std::isfinite(initial_halfwidth)) {
    throw ValidationError("initial_halfwidth must be positive");
  }
  if (!(segment_length >= 0.0) || !std::isfinite(segment_length)) {
    throw ValidationError("segment_length must be positive (or 0 for automatic)");
  }
  if (!(tol > 0.0)) throw ValidationError("tol must be positive");
  if (acceleration_terms < 4) throw ValidationError("acceleration_terms must be at least 4");
  if (max_segments < acceleration_terms) {
    throw ValidationError("max_segments must be at least acceleration_terms");
  }
  if (envelope_frequencies.empty()) throw ValidationError("envelope_frequencies is empty");
  for (double w : envelope_frequencies) {
    if (!std::isfinite(w)) throw ValidationError("envelope frequencies must be finite");
  }
}

LineIntegralParams LineIntegralParams::for_products() {
  LineIntegralParams p;
  p.envelope_frequencies = {-2.0, 0.0, 2.0};
  return p;
}

LineIntegralParams apply_environment(LineIntegralParams params) {
  if (const char* raw = std::getenv("BANDLIM_MAX_SEGMENTS"); raw != nullptr && *raw != '\0') {
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v <= 0 || v > 1'000'000) {
      throw ValidationError(std::string("BANDLIM_MAX_SEGMENTS must be a positive integer, got '") +
                            raw + "'");
    }
    params.max_segments = static_cast<int>(v);
  }
  return params;
}

LineIntegralReport integrate_oscillatory_line_report(const Integrand& envelope, double t,
                                                     const LineIntegralParams& params) {
  params.validate();
  if (!std::isfinite(t)) throw DomainError("line integral needs finite t");

  std::vector<double> shifted;
  for (double w : params.envelope_frequencies) shifted.push_back(w - t);
  shifted = distinct(std::move(shifted));
  double fastest = 0.0;
  for (double w : shifted) fastest = std::max(fastest, std::abs(w));

  TailAcceleration method = params.acceleration;
  if (method == TailAcceleration::Automatic) {
    bool single = fastest > 0.0;
    for (double w : shifted) {
      single = single && std::abs(std::abs(w) - fastest) <= kFrequencyMerge * fastest;
    }
    method = single ? TailAcceleration::Euler : TailAcceleration::FrequencyFit;
  }
  const double length = params.segment_length > 0.0 ? params.segment_length
                        : fastest > 0.0             ? std::numbers::pi / fastest
                                                    : std::numbers::pi;

  // Core [-R0, R0] in pieces no longer than one segment.
  const double r0 = params.initial_halfwidth;
  const int pieces = std::max(2, static_cast<int>(std::ceil(2.0 * r0 / length)));
  Segmenter forward{envelope, t, +1};
  Complex core = 0.0;
  double scale = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const auto [value, mass] = forward(-r0 + 2.0 * r0 * i / pieces, -r0 + 2.0 * r0 * (i + 1) / pieces);
    core += value;
    scale += mass;
  }
  scale = std::max(scale, std::numeric_limits<double>::min());

  Segmenter backward{envelope, t, -1};
  std::vector<double> mirrored;
  for (double w : shifted) mirrored.push_back(-w);
  mirrored = distinct(std::move(mirrored));

  TailResult plus{};
  TailResult minus{};
  if (method == TailAcceleration::Euler) {
    plus = euler_tail(forward, r0, length, params, scale);
    minus = euler_tail(backward, r0, length, params, scale);
  } else {
    plus = fitted_tail(forward, r0, length, shifted, params, scale);
    minus = fitted_tail(backward, r0, length, mirrored, params, scale);
  }
  return {core + plus.value + minus.value, plus.segments + minus.segments, method};
}

Complex integrate_oscillatory_line(const Integrand& envelope, double t,
                                   const LineIntegralParams& params) {
  return integrate_oscillatory_line_report(envelope, t, params).value;
}

Complex exponential_integral(int n, Complex z) {
  if (n < 0) throw DomainError("exponential_integral needs n >= 0");
  if (z.real() < 0.0) throw DomainError("exponential_integral needs Re z >= 0");
  constexpr double eps = 1e-16;
  if (z == 0.0) {
    if (n <= 1) throw DomainError("E_n(0) diverges for n <= 1");
    return 1.0 / (n - 1.0);
  }
  if (n == 0) return std::exp(-z) / z;
  const int nm1 = n - 1;
  if (std::abs(z) > 2.0) {
    // Continued fraction, modified Lentz.
    constexpr double tiny = 1e-300;
    Complex b = z + static_cast<double>(n);
    Complex c = 1.0 / tiny;
    Complex d = 1.0 / b;
    Complex h = d;
    for (int i = 1; i < 10000; ++i) {
      const double an = -static_cast<double>(i) * (nm1 + i);
      b += 2.0;
      d = 1.0 / (an * d + b);
      c = b + an / c;
      const Complex del = c * d;
      h *= del;
      if (std::abs(del - 1.0) < eps) return h * std::exp(-z);
    }
    throw NoConvergence("exponential_integral continued fraction", h, h);
  }
  // Ascending series.
  Complex ans = nm1 != 0 ? Complex(1.0 / nm1) : -std::log(z) - kEulerGamma;
  Complex fact = 1.0;
  for (int i = 1; i < 1000; ++i) {
    fact *= -z / static_cast<double>(i);
    Complex del;
    if (i != nm1) {
      del = -fact / static_cast<double>(i - nm1);
    } else {
      double psi = -kEulerGamma;
      for (int k = 1; k <= nm1; ++k) psi += 1.0 / k;
      del = fact * (-std::log(z) + psi);
    }
    ans += del;
    if (std::abs(del) < std::abs(ans) * eps) return ans;
  }
  throw NoConvergence("exponential_integral series", ans, ans);
}

}  // namespace bandlim
