#pragma once

#include <span>
#include <string>

#include "conformable/check_report.hpp"
#include "conformable/clock.hpp"
#include "conformable/function.hpp"
#include "conformable/weighted_spaces.hpp"

namespace conformable {

/// Conformable transport on ℝ₊ with spatial clock ψ(x) = x^α/α.
class TransportModel {
 public:
  TransportModel(Order alpha, WeightSpec weight);

  Order alpha() const noexcept { return weight_.alpha; }
  const WeightSpec& weight() const noexcept { return weight_; }
  double psi(double x) const { return clock_.psi(x); }
  double psi_inv(double xi) const { return clock_.psi_inv(xi); }

 private:
  WeightSpec weight_;
  Clock clock_;
};

/// x ↦ f(ψ⁻¹(ψ(x) + t)).
FunctionHandle apply_S_alpha(const TransportModel& m, const FunctionHandle& f, double t);

/// Forward ξ ↦ f(ψ⁻¹(ξ)); inverse x ↦ g(ψ(x)).
FunctionHandle apply_Q(const TransportModel& m, const FunctionHandle& f, Direction direction);

/// ξ ↦ g(ξ + t).
FunctionHandle apply_W(const FunctionHandle& g, double t);

/// max over ξ of |(Q S_α(t) f)(ξ) − (W(t) Q f)(ξ)|.
double transport_conjugacy_residual(const TransportModel& m, const FunctionHandle& f, double t,
                                    std::span<const double> xi_samples);

/// max over x of |∂_t u − ∂_x^α u| for u(t, x) = (S_α(t) f)(x); ∂_t is a
/// central difference with step 1e-5, ∂_x^α is exact through the chain rule.
/// f needs a first derivative.
double transport_pde_residual(const TransportModel& m, const FunctionHandle& f, double t,
                              std::span<const double> x_samples);

/// Infima of the transported weight over windows [E, 2E]. Residual is the last
/// infimum when the infima strictly decrease, otherwise the largest one;
/// tolerance is `threshold`. Labeled HEURISTIC.
CheckReport weight_criterion_probe(const TransportModel& m, std::span<const double> window_ends,
                                   double threshold = 1e-6);

namespace weights {

FunctionHandle exp_decay();   // e^{-x}
FunctionHandle constant();    // 1
FunctionHandle exp_growth();  // e^{x}

/// "exp_decay" | "constant" | "exp_growth"; throws ConfigError otherwise.
FunctionHandle by_name(const std::string& name);

}  // namespace weights

}  // namespace conformable
