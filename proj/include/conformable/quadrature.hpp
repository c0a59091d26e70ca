#pragma once

#include <vector>

#include "conformable/clock.hpp"
#include "conformable/function.hpp"

namespace conformable {

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int points);

/// Layout of a composite rule: `panels` subintervals with `points` nodes each.
struct QuadratureRule {
  int panels = 8;
  int points = 16;
  /// Plain rules only: breakpoints a + (b − a)(k/panels)^grading.
  double grading = 1.0;
};

/// Grading exponent that keeps a composite rule at full order on integrands
/// behaving like s^{1/δ} at the left end; 1 when 1/δ is an integer.
double clock_grading(Order order, int points);

/// Composite Gauss–Legendre integral of g over [a, b].
Complex integrate_plain(const ScalarFn& g, double a, double b, QuadratureRule rule = {});

/// Quadrature against dμ_δ(t) = t^{δ-1} dt on (a, b), carried out in the clock
/// variable s = Ψ(t), where the weight becomes ds:
///
///   ∫_a^b f(t) t^{δ-1} dt = ∫_{Ψ(a)}^{Ψ(b)} f(Ψ⁻¹(s)) ds.
///
/// The weight t^{δ-1} is never sampled. When a = 0 and 1/δ is not an integer,
/// f(Ψ⁻¹(s)) behaves like s^{1/δ} at the origin, so panel breakpoints are graded
/// algebraically toward s = 0 to keep the composite rule at full order.
class WeightedQuadrature {
 public:
  WeightedQuadrature(Order order, double a, double b, QuadratureRule rule = {});

  Order order() const noexcept { return order_; }
  double lower() const noexcept { return a_; }
  double upper() const noexcept { return b_; }
  int panels() const noexcept { return rule_.panels; }
  const QuadratureRule& rule() const noexcept { return rule_; }
  double grading() const noexcept { return grading_; }

  /// Nodes in the clock variable s ∈ (Ψ(a), Ψ(b)).
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  /// Nodes mapped back to t = Ψ⁻¹(s).
  const std::vector<double>& time_nodes() const noexcept { return time_nodes_; }

  /// ∫_a^b f(t) dμ_δ(t).
  Complex integrate(const ScalarFn& f) const;
  /// Σ w_k g(t_k): the weighted integral of an already-sampled real integrand.
  double integrate_real(const std::vector<double>& samples_at_time_nodes) const;

 private:
  Order order_;
  double a_;
  double b_;
  QuadratureRule rule_;
  double grading_ = 1.0;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> time_nodes_;
};

}  // namespace conformable
