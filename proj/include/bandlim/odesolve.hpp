#pragma once

// Linear constant-coefficient equations L g = h solved on the transform side:
// with g(z) = int f(t) e^{izt} dt, L acts as multiplication by its symbol F(it),
// so f = ĥ / F(it) where ĥ is the Legendre-side image of h.

#include <span>
#include <vector>

#include "bandlim/errors.hpp"
#include "bandlim/transform.hpp"

namespace bandlim {

/// L = sum_k coeffs[k] d^k/dz^k.
class DifferentialOperator {
 public:
  /// ValidationError if empty, non-finite, or the leading coefficient is zero (order > 0).
  explicit DifferentialOperator(std::vector<Complex> coeffs);

  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

 private:
  std::vector<Complex> coeffs_;
};

/// F(it) = sum_k a_k (it)^k.
Complex symbol_eval(const DifferentialOperator& op, double t);

/// L applied to the forward image of f: int f(t) F(it) e^{izt} dt.
Complex apply_operator(const DifferentialOperator& op, const Integrand& f, double z,
                       const TransformConfig& config);
Complex apply_operator(const DifferentialOperator& op, const LegendreSeries& f, double z,
                       const TransformConfig& config);
Complex apply_operator_nodes(const DifferentialOperator& op, std::span<const Complex> f_at_nodes,
                             double z, const QuadratureRule& rule);

/// The solver found a solution but its residual exceeds the caller's threshold.
class ResidualTooLarge : public Error {
 public:
  ResidualTooLarge(const std::string& what, double residual) : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// z = -10, -9.5, ..., 10.
std::vector<double> default_check_grid();

struct SolveOptions {
  double residual_threshold = 1e-8;
  /// |F(it)| at or below this anywhere on [-1, 1] counts as a zero of the symbol.
  double symbol_floor = 1e-8;
  int symbol_samples = 512;
  std::vector<double> check_grid = default_check_grid();
};

class SolutionBundle {
 public:
  SolutionBundle(LegendreSeries f_series, std::vector<Complex> f_at_nodes, QuadratureRule rule,
                 double residual, std::vector<double> check_grid);

  /// Legendre projection of f to the requested degree (for export).
  const LegendreSeries& f_series() const noexcept { return f_series_; }
  /// f = ĥ / F(it) at the compact rule's nodes.
  std::span<const Complex> f_at_nodes() const noexcept { return f_at_nodes_; }
  const QuadratureRule& rule() const noexcept { return rule_; }

  /// g(z) from the pointwise ratio, not the truncated series.
  Complex g_at(double z) const;

  /// max over check_grid of |L g - h|.
  double residual() const noexcept { return residual_; }
  std::span<const double> check_grid() const noexcept { return check_grid_; }

 private:
  LegendreSeries f_series_;
  std::vector<Complex> f_at_nodes_;
  QuadratureRule rule_;
  double residual_;
  std::vector<double> check_grid_;
};

/// Solves L g = h for a finite spherical-Bessel series h.
///
/// Throws SingularSymbol if F(it) vanishes on [-1, 1] (ValidationError instead when
/// h is also zero, since every null-space element would then qualify), and
/// ResidualTooLarge if the check-grid residual exceeds options.residual_threshold.
SolutionBundle solve(const DifferentialOperator& op, const BesselSeries& h, int nmax,
                     const TransformConfig& config, const SolveOptions& options = {});

}  // namespace bandlim
