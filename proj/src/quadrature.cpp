#include "bandlim/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "bandlim/errors.hpp"
#include "bandlim/kernels.hpp"

namespace bandlim {

Integrand::Integrand(ComplexFunction f) {
  if (!f) throw ValidationError("empty integrand");
  batch_ = [f = std::move(f)](std::span<const double> x, std::span<Complex> out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = f(x[i]);
  };
}

Integrand::Integrand(BatchFunction f) : batch_(std::move(f)) {
  if (!batch_) throw ValidationError("empty integrand");
}

void Integrand::operator()(std::span<const double> x, std::span<Complex> out) const {
  batch_(x, out);
}

Complex Integrand::operator()(double x) const {
  Complex out;
  batch_(std::span<const double>(&x, 1), std::span<Complex>(&out, 1));
  return out;
}

QuadratureRule::QuadratureRule(Unchecked, std::vector<double> nodes, std::vector<double> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {}

QuadratureRule::QuadratureRule(std::vector<double> nodes, std::vector<double> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
  const std::size_t n = nodes_.size();
  if (n == 0 || weights_.size() != n) {
    throw ValidationError("quadrature rule needs equally many (>= 1) nodes and weights");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(std::abs(nodes_[i]) < 1.0) || !(weights_[i] > 0.0)) {
      throw ValidationError("quadrature nodes must lie in (-1, 1) with positive weights");
    }
    if (i > 0 && !(nodes_[i] > nodes_[i - 1])) {
      throw ValidationError("quadrature nodes must be strictly increasing");
    }
    if (std::abs(nodes_[i] + nodes_[n - 1 - i]) > 1e-15 ||
        std::abs(weights_[i] - weights_[n - 1 - i]) > 1e-15) {
      throw ValidationError("quadrature rule must be symmetric about 0");
    }
    total += weights_[i];
  }
  if (std::abs(total - 2.0) > 1e-14) throw ValidationError("quadrature weights must sum to 2");
}

QuadratureRule gauss_legendre_rule(int npoints) {
  if (npoints < 1 || npoints > kMaxGaussPoints) {
    throw ValidationError("Gauss-Legendre point count " + std::to_string(npoints) +
                          " outside [1, " + std::to_string(kMaxGaussPoints) + "]");
  }
  const int n = npoints;
  std::vector<double> nodes(n), weights(n);

  // P_n(x) and P_n'(x) by the three-term recurrence.
  auto evaluate = [n](double x, double& p, double& dp) {
    double p_nm1 = 1.0;
    p = x;
    for (int k = 1; k < n; ++k) {
      const double next = ((2.0 * k + 1.0) * x * p - k * p_nm1) / (k + 1.0);
      p_nm1 = p;
      p = next;
    }
    if (n == 1) p_nm1 = 1.0;
    dp = n * (x * p - p_nm1) / (x * x - 1.0);
  };

  const int half = (n + 1) / 2;
  for (int i = 1; i <= half; ++i) {
    double x = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    double p = 0.0;
    double dp = 0.0;
    bool converged = false;
    for (int iter = 0; iter < 100; ++iter) {
      evaluate(x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw NoConvergence("Newton iteration for Gauss-Legendre node " + std::to_string(i) +
                              " of " + std::to_string(n) + " did not converge",
                          x, x);
    }
    if (n % 2 == 1 && i == half) x = 0.0;
    evaluate(x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[n - i] = x;
    nodes[i - 1] = -x;
    weights[n - i] = w;
    weights[i - 1] = w;
  }
  return QuadratureRule(QuadratureRule::Unchecked{}, std::move(nodes), std::move(weights));
}

namespace {

void check_finite(std::span<const double> x, std::span<const Complex> values) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag())) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "integrand is not finite at node x = " << x[i];
      throw EvaluationError(msg.str(), x[i]);
    }
  }
}

}  // namespace

Complex integrate_compact(const Integrand& f, const QuadratureRule& rule) {
  std::vector<Complex> values(rule.size());
  f(rule.nodes(), values);
  check_finite(rule.nodes(), values);
  return kernels::weighted_sum(rule.weights(), values);
}

Complex integrate_interval(const Integrand& f, double a, double b, const QuadratureRule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::vector<double> x(rule.size());
  const auto nodes = rule.nodes();
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = mid + half * nodes[i];
  std::vector<Complex> values(x.size());
  f(x, values);
  check_finite(x, values);
  return half * kernels::weighted_sum(rule.weights(), values);
}

}  // namespace bandlim
