#include "conformable/function.hpp"

#include <algorithm>
#include <cmath>

#include "conformable/errors.hpp"

namespace conformable {

Complex FunctionHandle::derivative(double x) const {
  if (!first_) throw CapabilityError("function handle has no classical derivative");
  return first_(x);
}

Complex FunctionHandle::second_derivative(double x) const {
  if (!second_) throw CapabilityError("function handle has no second derivative");
  return second_(x);
}

double derivative_consistency(const FunctionHandle& f, std::span<const double> samples) {
  double worst = 0.0;
  for (double x : samples) {
    const double h = 1e-5 * std::max(1.0, std::abs(x));
    const Complex fd = (f(x + h) - f(x - h)) / (2.0 * h);
    const Complex exact = f.derivative(x);
    const double scale = std::max(1.0, std::abs(exact));
    worst = std::max(worst, std::abs(fd - exact) / scale);
  }
  return worst;
}

namespace functions {

FunctionHandle constant(Complex c) {
  return FunctionHandle([c](double) { return c; }, [](double) { return Complex{}; },
                        [](double) { return Complex{}; });
}

FunctionHandle monomial(int m) {
  if (m < 0) throw DomainError("monomial degree must be nonnegative");
  auto ipow = [](double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
  };
  return FunctionHandle(
      [=](double x) { return Complex(ipow(x, m)); },
      [=](double x) { return m == 0 ? Complex{} : Complex(m * ipow(x, m - 1)); },
      [=](double x) { return m < 2 ? Complex{} : Complex(m * (m - 1) * ipow(x, m - 2)); });
}

FunctionHandle power(double p) {
  return FunctionHandle([=](double x) { return Complex(std::pow(x, p)); },
                        [=](double x) { return Complex(p * std::pow(x, p - 1.0)); },
                        [=](double x) { return Complex(p * (p - 1.0) * std::pow(x, p - 2.0)); });
}

FunctionHandle sine() {
  return FunctionHandle([](double x) { return Complex(std::sin(x)); },
                        [](double x) { return Complex(std::cos(x)); },
                        [](double x) { return Complex(-std::sin(x)); });
}

FunctionHandle cosine() {
  return FunctionHandle([](double x) { return Complex(std::cos(x)); },
                        [](double x) { return Complex(-std::sin(x)); },
                        [](double x) { return Complex(-std::cos(x)); });
}

FunctionHandle exp_scaled(double k) {
  return FunctionHandle([=](double x) { return Complex(std::exp(k * x)); },
                        [=](double x) { return Complex(k * std::exp(k * x)); },
                        [=](double x) { return Complex(k * k * std::exp(k * x)); });
}

}  // namespace functions
}  // namespace conformable
