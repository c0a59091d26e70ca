#pragma once

#include "conformable/clock.hpp"
#include "conformable/function.hpp"
#include "conformable/quadrature.hpp"

namespace conformable {

/// L^{p,δ}(0, T): Lebesgue space against dμ_δ(t) = t^{δ-1} dt, T finite.
struct SpaceSpec {
  SpaceSpec(Order order, double p, double horizon);

  Order order;
  double p;
  double horizon;
};

double lp_delta_norm(const FunctionHandle& f, const SpaceSpec& spec, QuadratureRule rule = {});

/// (f, g)_{2,δ} = ∫ f ḡ dμ_δ. Requires spec.p == 2.
Complex inner_product_2delta(const FunctionHandle& f, const FunctionHandle& g, const SpaceSpec& spec,
                             QuadratureRule rule = {});

/// (Σ_{k≤m} ‖D^{kδ} f‖_{p,δ}^p)^{1/p} for m ∈ {0, 1, 2}.
double sobolev_norm(const FunctionHandle& f, int m, const SpaceSpec& spec, QuadratureRule rule = {});

/// Plain L^p(a, b) norm by composite Gauss–Legendre.
double lp_norm_plain(const FunctionHandle& g, double a, double b, double p, QuadratureRule rule = {});

/// The time isometry U: L^{p,δ}(0,T) → L^p(0, Ψ(T)), (Uf)(s) = f((δs)^{1/δ}).
class TimeIsometry {
 public:
  TimeIsometry(Order order, double horizon);

  Order order() const noexcept { return clock_.order(); }
  double horizon() const noexcept { return horizon_; }
  double target_horizon() const noexcept { return target_horizon_; }

  /// s ↦ f(Ψ⁻¹(s)) on [0, Ψ(T)]. The attached derivative is the conformable
  /// derivative of f read in the s variable.
  FunctionHandle apply(const FunctionHandle& f) const;
  /// t ↦ g(Ψ(t)) on [0, T].
  FunctionHandle inverse(const FunctionHandle& g) const;

 private:
  Clock clock_;
  double horizon_;
  double target_horizon_;
};

FunctionHandle time_isometry_apply(const TimeIsometry& iso, const FunctionHandle& f);

enum class Direction { kForward, kInverse };

/// Spatial unitary U: L^{2,δ}(0,1) → L²(0,1),
///   forward  (Uf)(ξ)    = δ^{-1/2} f(ξ^{1/δ}),
///   inverse  (U⁻¹g)(x)  = δ^{1/2} g(x^δ).
class SpatialUnitary {
 public:
  explicit SpatialUnitary(Order order) : order_(order) {}

  Order order() const noexcept { return order_; }
  FunctionHandle apply(const FunctionHandle& f, Direction direction) const;

 private:
  Order order_;
};

FunctionHandle spatial_unitary_apply(const SpatialUnitary& u, const FunctionHandle& f, Direction direction);

/// Weight ρ on ℝ₊ attached to an order α.
struct WeightSpec {
  WeightSpec(Order alpha, FunctionHandle rho);

  Order alpha;
  FunctionHandle rho;
};

/// ρ̃(ξ) = ρ(ψ⁻¹(ξ)) = ρ((αξ)^{1/α}).
FunctionHandle transported_weight(const WeightSpec& w);

}  // namespace conformable
