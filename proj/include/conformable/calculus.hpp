#pragma once

#include "conformable/clock.hpp"
#include "conformable/function.hpp"
#include "conformable/quadrature.hpp"

namespace conformable {

/// Conformable derivative of a C¹ function: D^δ f(t) = t^{1-δ} f'(t), t > 0.
Complex conf_derivative(const FunctionHandle& f, Order order, double t);

/// Tuning for the limit-definition derivative.
struct LimitOptions {
  double h0 = 1e-2;
  double h_min = 1e-6;
  double rel_tol = 1e-8;
};

/// Conformable derivative from its defining quotient
///
///   (f(t + h t^{1-δ}) − f(t)) / h,   h = h0·2^{-k},
///
/// with one Richardson column (the quotient is first order in h). Converged
/// once two successive extrapolants agree to `rel_tol`; throws NumericalError
/// when h drops below `h_min` first. Needs only point evaluations of f.
Complex conf_derivative_limit(const FunctionHandle& f, Order order, double t, LimitOptions opts = {});
Complex conf_derivative_limit(const FunctionHandle& f, Order order, double t, double h_min);

/// Conformable integral ∫_a^t f(ξ) ξ^{δ-1} dξ, evaluated in the clock variable.
Complex conf_integral(const FunctionHandle& f, Order order, double a, double t, QuadratureRule rule = {});

/// Iterated conformable derivative D^{kδ} f for k ∈ {1, 2}:
///   k = 1:  t^{1-δ} f'(t)
///   k = 2:  (1−δ) t^{1-2δ} f'(t) + t^{2-2δ} f''(t)
Complex conf_derivative_iterated(const FunctionHandle& f, Order order, int k, double t);

/// Handle for t ↦ I_δ f(t) = ∫_0^t f ξ^{δ-1} dξ (no derivative attached).
FunctionHandle conf_integral_handle(const FunctionHandle& f, Order order, QuadratureRule rule = {});

}  // namespace conformable
