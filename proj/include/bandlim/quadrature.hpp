#pragma once

#include <complex>
#include <functional>
#include <span>
#include <type_traits>
#include <vector>

namespace bandlim {

using Complex = std::complex<double>;

/// Scalar complex-valued function of one real variable.
using ComplexFunction = std::function<Complex(double)>;

/// Batch form: fills out[i] = f(x[i]). Lets series evaluations use the table kernels.
using BatchFunction = std::function<void(std::span<const double> x, std::span<Complex> out)>;

/// A function accepted by the integrators, either pointwise or batched.
class Integrand {
 public:
  Integrand(ComplexFunction f);  // NOLINT(google-explicit-constructor)
  Integrand(BatchFunction f);    // NOLINT(google-explicit-constructor)
  template <class F>
    requires std::is_invocable_r_v<Complex, F, double>
  Integrand(F f) : Integrand(ComplexFunction(std::move(f))) {}  // NOLINT

  void operator()(std::span<const double> x, std::span<Complex> out) const;
  Complex operator()(double x) const;

 private:
  BatchFunction batch_;
};

/// Nodes and weights on [-1, 1]. Immutable; nodes strictly increasing and symmetric.
class QuadratureRule {
 public:
  /// Validates the type invariants (sorted, symmetric, positive weights summing to 2).
  QuadratureRule(std::vector<double> nodes, std::vector<double> weights);

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return nodes_.size(); }

 private:
  struct Unchecked {};
  QuadratureRule(Unchecked, std::vector<double> nodes, std::vector<double> weights);
  friend QuadratureRule gauss_legendre_rule(int npoints);

  std::vector<double> nodes_;
  std::vector<double> weights_;
};

inline constexpr int kMaxGaussPoints = 4096;

/// npoints-point Gauss-Legendre rule on [-1, 1]; exact for degree <= 2 npoints - 1.
/// Throws ValidationError outside [1, kMaxGaussPoints].
QuadratureRule gauss_legendre_rule(int npoints);

/// sum_i w_i f(x_i). Throws EvaluationError naming the node if f is not finite there.
Complex integrate_compact(const Integrand& f, const QuadratureRule& rule);

/// Same, over [a, b] by the affine map of the rule.
Complex integrate_interval(const Integrand& f, double a, double b, const QuadratureRule& rule);

/// How the tail series of an oscillatory line integral is summed.
enum class TailAcceleration {
  /// Euler when every tail frequency has the same nonzero magnitude, FrequencyFit otherwise.
  Automatic,
  /// Repeated averaging of alternating half-period partial sums.
  Euler,
  /// Least-squares fit of partial integrals to exact tails of e^{iwy} y^{-k}.
  FrequencyFit,
};

struct LineIntegralParams {
  double initial_halfwidth = 8.0;
  /// 0 selects the half-period of the fastest tail frequency.
  double segment_length = 0.0;
  int acceleration_terms = 12;
  double tol = 1e-9;
  int max_segments = 400;
  /// Frequencies present in the envelope's large-|y| behaviour. Band-limited functions
  /// of this library oscillate like e^{+-iy}; products of two of them like e^{+-2iy} and 1.
  std::vector<double> envelope_frequencies{-1.0, 1.0};
  TailAcceleration acceleration = TailAcceleration::Automatic;

  /// Throws ValidationError unless tol > 0 and max_segments >= acceleration_terms >= 4.
  void validate() const;

  static LineIntegralParams for_products();
};

/// Reads BANDLIM_MAX_SEGMENTS from the environment (if set) into params.max_segments.
LineIntegralParams apply_environment(LineIntegralParams params);

struct LineIntegralReport {
  Complex value;
  int segments = 0;  // tail segments integrated, both sides together
  TailAcceleration method = TailAcceleration::Automatic;
};

/// Integral over the real line of envelope(y) e^{-iyt}.
///
/// [-R0, R0] is integrated directly; each tail is cut into half-period segments
/// whose partial sums are accelerated. Throws NoConvergence when max_segments is
/// exhausted. The envelope must decay at least like 1/|y|; that is not checked.
Complex integrate_oscillatory_line(const Integrand& envelope, double t,
                                   const LineIntegralParams& params = {});

LineIntegralReport integrate_oscillatory_line_report(const Integrand& envelope, double t,
                                                     const LineIntegralParams& params = {});

/// E_n(z) = int_1^inf e^{-zs} s^{-n} ds for Re z >= 0, z != 0 when n <= 1.
Complex exponential_integral(int n, Complex z);

}  // namespace bandlim
