#pragma once

#include <complex>
#include <functional>
#include <span>

namespace conformable {

using Complex = std::complex<double>;
using ScalarFn = std::function<Complex(double)>;

/// A scalar function of one real variable together with whatever classical
/// derivatives are known for it in closed form.
///
/// Evaluators must be re-entrant; handles are cheap to copy and immutable.
class FunctionHandle {
 public:
  FunctionHandle() = default;
  explicit FunctionHandle(ScalarFn value, ScalarFn first = {}, ScalarFn second = {})
      : value_(std::move(value)), first_(std::move(first)), second_(std::move(second)) {}

  Complex operator()(double x) const { return value_(x); }

  bool has_derivative() const noexcept { return static_cast<bool>(first_); }
  bool has_second_derivative() const noexcept { return static_cast<bool>(second_); }

  /// Classical first derivative; throws CapabilityError when absent.
  Complex derivative(double x) const;
  /// Classical second derivative; throws CapabilityError when absent.
  Complex second_derivative(double x) const;

  const ScalarFn& value_fn() const noexcept { return value_; }
  const ScalarFn& derivative_fn() const noexcept { return first_; }
  const ScalarFn& second_derivative_fn() const noexcept { return second_; }

 private:
  ScalarFn value_;
  ScalarFn first_;
  ScalarFn second_;
};

/// Checks the declared first derivative against a central difference at the
/// given sample points. Returns the worst relative deviation.
double derivative_consistency(const FunctionHandle& f, std::span<const double> samples);

namespace functions {

// Closed-form corpus used throughout tests and suites.
FunctionHandle constant(Complex c);
FunctionHandle monomial(int m);  // t^m, m ≥ 0
FunctionHandle power(double p);  // t^p on t > 0
FunctionHandle sine();
FunctionHandle cosine();
FunctionHandle exp_scaled(double k);  // e^{k t}

}  // namespace functions

}  // namespace conformable
