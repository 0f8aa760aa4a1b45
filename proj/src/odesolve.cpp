#include "bandlim/odesolve.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "bandlim/specfun.hpp"

namespace bandlim {

DifferentialOperator::DifferentialOperator(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw ValidationError("differential operator needs at least one coefficient");
  for (const Complex& a : coeffs_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw ValidationError("differential operator has a non-finite coefficient");
    }
  }
  if (coeffs_.size() > 1 && coeffs_.back() == Complex(0.0)) {
    throw ValidationError("leading coefficient of a differential operator must be nonzero");
  }
}

Complex symbol_eval(const DifferentialOperator& op, double t) {
  const Complex it(0.0, t);
  const auto a = op.coeffs();
  Complex value = a.back();
  for (std::size_t k = a.size() - 1; k-- > 0;) value = value * it + a[k];
  return value;
}

Complex apply_operator_nodes(const DifferentialOperator& op, std::span<const Complex> f_at_nodes,
                             double z, const QuadratureRule& rule) {
  if (f_at_nodes.size() != rule.size()) {
    throw ValidationError("apply_operator_nodes: value count does not match the rule");
  }
  const auto nodes = rule.nodes();
  std::vector<Complex> weighted(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) weighted[i] = f_at_nodes[i] * symbol_eval(op, nodes[i]);
  return forward_transform_nodes(weighted, z, rule);
}

Complex apply_operator(const DifferentialOperator& op, const Integrand& f, double z,
                       const TransformConfig& config) {
  const auto& rule = config.compact_rule();
  std::vector<Complex> values(rule.size());
  f(rule.nodes(), values);
  return apply_operator_nodes(op, values, z, rule);
}

Complex apply_operator(const DifferentialOperator& op, const LegendreSeries& f, double z,
                       const TransformConfig& config) {
  return apply_operator(op, f.as_integrand(), z, config);
}

std::vector<double> default_check_grid() {
  std::vector<double> grid;
  for (int k = -20; k <= 20; ++k) grid.push_back(0.5 * k);
  return grid;
}

SolutionBundle::SolutionBundle(LegendreSeries f_series, std::vector<Complex> f_at_nodes,
                               QuadratureRule rule, double residual, std::vector<double> check_grid)
    : f_series_(std::move(f_series)),
      f_at_nodes_(std::move(f_at_nodes)),
      rule_(std::move(rule)),
      residual_(residual),
      check_grid_(std::move(check_grid)) {}

Complex SolutionBundle::g_at(double z) const { return forward_transform_nodes(f_at_nodes_, z, rule_); }

namespace {

bool is_zero(const BesselSeries& h) {
  for (const Complex& c : h.coeffs()) {
    if (c != Complex(0.0)) return false;
  }
  return true;
}

void check_symbol(const DifferentialOperator& op, const BesselSeries& h, const QuadratureRule& rule,
                  const SolveOptions& options) {
  double worst = std::numeric_limits<double>::infinity();
  double where = 0.0;
  auto probe = [&](double t) {
    const double v = std::abs(symbol_eval(op, t));
    if (v < worst) {
      worst = v;
      where = t;
    }
  };
  const int samples = std::max(3, options.symbol_samples);
  std::vector<double> grid(samples), value(samples);
  for (int k = 0; k < samples; ++k) {
    grid[k] = -1.0 + 2.0 * k / (samples - 1);
    value[k] = std::abs(symbol_eval(op, grid[k]));
    probe(grid[k]);
  }
  for (double t : rule.nodes()) probe(t);
  // A root between samples only shows up as a shallow dip; refine every sampled
  // local minimum by golden section on its bracket.
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int k = 0; k < samples; ++k) {
    const bool left_ok = k == 0 || value[k] <= value[k - 1];
    const bool right_ok = k == samples - 1 || value[k] <= value[k + 1];
    if (!left_ok || !right_ok) continue;
    double a = grid[std::max(k - 1, 0)];
    double b = grid[std::min(k + 1, samples - 1)];
    double c = b - ratio * (b - a), d = a + ratio * (b - a);
    double fc = std::abs(symbol_eval(op, c)), fd = std::abs(symbol_eval(op, d));
    for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - ratio * (b - a);
        fc = std::abs(symbol_eval(op, c));
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + ratio * (b - a);
        fd = std::abs(symbol_eval(op, d));
      }
    }
    probe(c);
    probe(d);
  }
  if (worst > options.symbol_floor) return;
  if (is_zero(h)) {
    throw ValidationError("degenerate problem: h is zero and the operator symbol vanishes on [-1, 1]");
  }
  std::ostringstream msg;
  msg.precision(6);
  msg << "operator symbol F(it) vanishes on [-1, 1] near t = " << where << " (|F| = " << worst << ")";
  throw SingularSymbol(msg.str(), where);
}

}  // namespace

SolutionBundle solve(const DifferentialOperator& op, const BesselSeries& h, int nmax,
                     const TransformConfig& config, const SolveOptions& options) {
  const QuadratureRule& rule = config.compact_rule();
  check_symbol(op, h, rule, options);

  // ĥ(t) = sum d̄_n P_n(t), d̄_n = d_n / (2 i^n); f = ĥ / F(it).
  const LegendreSeries h_hat = coeff_bar(h);
  auto ratio = [&op, &h_hat](std::span<const double> t, std::span<Complex> out) {
    h_hat.evaluate(t, out);
    for (std::size_t i = 0; i < t.size(); ++i) out[i] /= symbol_eval(op, t[i]);
  };
  std::vector<Complex> f_at_nodes(rule.size());
  ratio(rule.nodes(), f_at_nodes);
  LegendreSeries f_series = legendre_projection(BatchFunction(ratio), nmax, rule);

  double residual = 0.0;
  for (double z : options.check_grid) {
    const Complex lhs = apply_operator_nodes(op, f_at_nodes, z, rule);
    residual = std::max(residual, std::abs(lhs - h(z)));
  }
  if (!(residual <= options.residual_threshold)) {
    std::ostringstream msg;
    msg << "residual " << residual << " exceeds threshold " << options.residual_threshold;
    throw ResidualTooLarge(msg.str(), residual);
  }
  return SolutionBundle(std::move(f_series), std::move(f_at_nodes), rule, residual, options.check_grid);
}

}  // namespace bandlim
