#include <doctest.h>

#include <cmath>
#include <numbers>

#include "conformable/calculus.hpp"
#include "conformable/errors.hpp"

using namespace conformable;

namespace {

double rel(Complex got, Complex want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

// ∫_0^t sin ξ · ξ^{δ-1} dξ by termwise integration of the Taylor series.
double sine_moment_series(double delta, double t) {
  double total = 0.0;
  double factorial = 1.0;
  for (int k = 0; k < 30; ++k) {
    const int m = 2 * k + 1;
    if (k > 0) factorial *= (m - 1.0) * m;
    total += (k % 2 == 0 ? 1.0 : -1.0) * std::pow(t, m + delta) / (factorial * (m + delta));
  }
  return total;
}

}  // namespace

TEST_CASE("conf_derivative worked values") {
  CHECK(std::abs(conf_derivative(functions::monomial(1), Order(0.5), 4.0) - 2.0) <= 1e-14);
  CHECK(std::abs(conf_derivative(functions::monomial(2), Order(0.5), 1.0) - 2.0) <= 1e-14);
  CHECK(std::abs(conf_derivative(functions::exp_scaled(1.0), Order(1.0), 1.0) - std::numbers::e) <= 1e-14);
}

TEST_CASE("conf_derivative errors") {
  CHECK_THROWS_AS(conf_derivative(functions::sine(), Order(0.5), 0.0), DomainError);
  CHECK_THROWS_AS(conf_derivative(functions::sine(), Order(0.5), -1.0), DomainError);
  const FunctionHandle bare([](double t) -> Complex { return t; });
  CHECK_THROWS_AS(conf_derivative(bare, Order(0.5), 1.0), CapabilityError);
}

TEST_CASE("limit-definition derivative worked values") {
  CHECK(std::abs(conf_derivative_limit(functions::monomial(2), Order(0.5), 1.0) - 2.0) <= 1e-6);
  CHECK(std::abs(conf_derivative_limit(functions::monomial(1), Order(0.3), 2.0) - std::pow(2.0, 0.7)) <= 1e-6);
  CHECK(std::abs(conf_derivative_limit(functions::constant(3.0), Order(0.4), 1.0)) == 0.0);
}

TEST_CASE("limit-definition derivative needs no classical derivative") {
  const FunctionHandle bare([](double t) -> Complex { return std::exp(-t) * std::cos(t); });
  for (double d : {0.3, 0.7}) {
    const Complex got = conf_derivative_limit(bare, Order(d), 1.5);
    const double t = 1.5;
    const double want = std::pow(t, 1.0 - d) * (-std::exp(-t) * (std::cos(t) + std::sin(t)));
    CHECK(rel(got, want) <= 1e-6);
  }
}

TEST_CASE("limit-definition derivative reports non-convergence") {
  const FunctionHandle rough([](double t) -> Complex { return std::sin(1e9 * t); });
  CHECK_THROWS_AS(conf_derivative_limit(rough, Order(0.5), 1.0), NumericalError);
}

TEST_CASE("conf_integral worked values") {
  for (double d : {0.3, 0.5, 1.0}) {
    const Clock c(d);
    for (double t : {0.5, 1.0, 3.0}) {
      CHECK(rel(conf_integral(functions::constant(1.0), Order(d), 0.0, t), c.psi(t)) <= 1e-13);
    }
  }
  CHECK(rel(conf_integral(functions::monomial(1), Order(0.5), 0.0, 1.0), 2.0 / 3.0) <= 1e-13);
  CHECK(rel(conf_integral(functions::monomial(2), Order(1.0), 0.0, 1.0), 1.0 / 3.0) <= 1e-13);
  CHECK_THROWS_AS(conf_integral(functions::sine(), Order(0.5), 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(conf_integral(functions::sine(), Order(0.5), 2.0, 1.0), DomainError);
}

TEST_CASE("conf_integral of sine matches the termwise series") {
  for (double d : {0.3, 0.5, 0.9}) {
    for (double t : {0.5, 1.0, 2.0}) {
      CAPTURE(d);
      CAPTURE(t);
      CHECK(rel(conf_integral(functions::sine(), Order(d), 0.0, t), sine_moment_series(d, t)) <= 1e-13);
    }
  }
}

TEST_CASE("doubling panels cuts the sine-integral error by at least 100") {
  for (double d : {0.3, 0.5, 0.9, 1.0}) {
    CAPTURE(d);
    const double exact = sine_moment_series(d, 2.0);
    QuadratureRule coarse{4, 4, 1.0};
    QuadratureRule fine{8, 4, 1.0};
    const double e1 = std::abs(conf_integral(functions::sine(), Order(d), 0.0, 2.0, coarse) - exact);
    const double e2 = std::abs(conf_integral(functions::sine(), Order(d), 0.0, 2.0, fine) - exact);
    CHECK((e2 <= 1e-15 || e1 / e2 >= 100.0));
  }
}

TEST_CASE("weighted quadrature weights and nodes") {
  for (double d : {0.3, 0.5, 0.9}) {
    const WeightedQuadrature q(Order(d), 0.0, 2.0);
    const double span = Clock(d).psi(2.0);
    double sum = 0.0;
    for (double w : q.weights()) {
      CHECK(w > 0.0);
      sum += w;
    }
    CHECK(std::abs(sum - span) <= 1e-12 * span);
    for (double s : q.nodes()) {
      CHECK(s > 0.0);
      CHECK(s < span);
    }
  }
}

TEST_CASE("iterated derivative worked values") {
  CHECK(std::abs(conf_derivative_iterated(functions::monomial(2), Order(1.0), 2, 5.0) - 2.0) <= 1e-14);
  CHECK(std::abs(conf_derivative_iterated(functions::monomial(1), Order(0.5), 2, 1.0) - 0.5) <= 1e-14);
  CHECK(std::abs(conf_derivative_iterated(functions::constant(2.0), Order(0.3), 2, 1.7)) == 0.0);
  CHECK_THROWS_AS(conf_derivative_iterated(functions::sine(), Order(0.5), 3, 1.0), ConfigError);
  CHECK_THROWS_AS(conf_derivative_iterated(functions::sine(), Order(0.5), 2, 0.0), DomainError);
}

TEST_CASE("iterated derivative equals the derivative of the first iterate") {
  // D(D f) with the inner iterate differentiated by a central difference.
  const Order order(0.6);
  const FunctionHandle f = functions::sine();
  auto inner = [&](double t) { return conf_derivative(f, order, t); };
  for (double t : {0.3, 1.0, 2.5}) {
    const double step = 1e-5;
    const Complex fd = std::pow(t, 0.4) * (inner(t + step) - inner(t - step)) / (2.0 * step);
    CHECK(rel(conf_derivative_iterated(f, order, 2, t), fd) <= 1e-8);
  }
}

TEST_CASE("fundamental identity D∘I = id") {
  for (double d : {0.3, 0.5, 0.9}) {
    for (const auto& f : {functions::constant(1.0), functions::monomial(1), functions::sine()}) {
      const FunctionHandle integral = conf_integral_handle(f, Order(d));
      for (int k = 1; k <= 20; ++k) {
        const double t = 0.05 * k;
        CHECK(rel(conf_derivative_limit(integral, Order(d), t), f(t)) <= 1e-8);
      }
    }
  }
}

TEST_CASE("reduction at δ = 1") {
  for (const auto& f : {functions::sine(), functions::exp_scaled(0.7), functions::monomial(3)}) {
    for (double t : {0.2, 1.0, 2.0}) {
      CHECK(rel(conf_derivative(f, Order(1.0), t), f.derivative(t)) <= 1e-12);
    }
  }
  CHECK(rel(conf_integral(functions::sine(), Order(1.0), 0.0, 2.0), 1.0 - std::cos(2.0)) <= 1e-12);
  CHECK(rel(conf_integral(functions::exp_scaled(1.0), Order(1.0), 0.0, 1.0), std::numbers::e - 1.0) <= 1e-12);
}

TEST_CASE("power rule") {
  for (double d : {0.3, 0.5, 0.9}) {
    for (int m = 1; m <= 3; ++m) {
      for (double t : {0.1, 1.0, 2.0}) {
        CHECK(rel(conf_derivative(functions::monomial(m), Order(d), t), m * std::pow(t, m - d)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("corpus derivatives are consistent with their values") {
  const double samples[] = {0.2, 0.5, 1.0, 1.5, 2.0};
  for (const auto& f : {functions::monomial(0), functions::monomial(3), functions::power(0.5), functions::sine(),
                        functions::cosine(), functions::exp_scaled(-2.0)}) {
    CHECK(derivative_consistency(f, samples) <= 1e-6);
  }
  const FunctionHandle wrong([](double t) -> Complex { return t * t; }, [](double t) -> Complex { return t; });
  CHECK(derivative_consistency(wrong, samples) > 1e-2);
}
