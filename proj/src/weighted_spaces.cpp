#include "conformable/weighted_spaces.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "conformable/calculus.hpp"
#include "conformable/errors.hpp"

namespace conformable {

namespace {

double checked_power(Complex value, double p) {
  const double mag = std::abs(value);
  if (!std::isfinite(mag)) throw NumericalError("non-finite integrand sample in weighted norm");
  return p == 2.0 ? mag * mag : std::pow(mag, p);
}

void require_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream msg;
    msg << what << ": argument " << x << " outside (0, 1)";
    throw DomainError(msg.str());
  }
}

}  // namespace

SpaceSpec::SpaceSpec(Order order_in, double p_in, double horizon_in)
    : order(order_in), p(p_in), horizon(horizon_in) {
  if (!(p >= 1.0)) throw DomainError("SpaceSpec: p must be >= 1");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("SpaceSpec: horizon must be finite and > 0");
}

double lp_delta_norm(const FunctionHandle& f, const SpaceSpec& spec, QuadratureRule rule) {
  const WeightedQuadrature quad(spec.order, 0.0, spec.horizon, rule);
  const auto& t = quad.time_nodes();
  std::vector<double> samples(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) samples[k] = checked_power(f(t[k]), spec.p);
  const double integral = quad.integrate_real(samples);
  return spec.p == 2.0 ? std::sqrt(integral) : std::pow(integral, 1.0 / spec.p);
}

Complex inner_product_2delta(const FunctionHandle& f, const FunctionHandle& g, const SpaceSpec& spec,
                             QuadratureRule rule) {
  if (spec.p != 2.0) throw DomainError("inner_product_2delta: space must have p = 2");
  const WeightedQuadrature quad(spec.order, 0.0, spec.horizon, rule);
  return quad.integrate([&](double t) {
    const Complex v = f(t) * std::conj(g(t));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NumericalError("non-finite integrand sample in inner product");
    }
    return v;
  });
}

double sobolev_norm(const FunctionHandle& f, int m, const SpaceSpec& spec, QuadratureRule rule) {
  if (m < 0 || m > 2) throw ConfigError("sobolev_norm: only m = 0, 1, 2 are supported");
  double total = 0.0;
  for (int k = 0; k <= m; ++k) {
    double term = 0.0;
    if (k == 0) {
      term = std::pow(lp_delta_norm(f, spec, rule), spec.p);
    } else {
      const FunctionHandle dk([f, order = spec.order, k](double t) { return conf_derivative_iterated(f, order, k, t); });
      term = std::pow(lp_delta_norm(dk, spec, rule), spec.p);
    }
    total += term;
  }
  return std::pow(total, 1.0 / spec.p);
}

double lp_norm_plain(const FunctionHandle& g, double a, double b, double p, QuadratureRule rule) {
  const Complex integral = integrate_plain([&](double s) { return Complex(checked_power(g(s), p)); }, a, b, rule);
  return std::pow(integral.real(), 1.0 / p);
}

TimeIsometry::TimeIsometry(Order order, double horizon)
    : clock_(order), horizon_(horizon), target_horizon_(clock_.psi(horizon)) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("TimeIsometry: horizon must be finite and > 0");
}

FunctionHandle TimeIsometry::apply(const FunctionHandle& f) const {
  const Clock clock = clock_;
  const double top = target_horizon_ * (1.0 + 1e-14);
  auto check = [top](double s) {
    if (!(s >= 0.0 && s <= top)) throw DomainError("time isometry: evaluation outside (0, Psi(T))");
  };
  ScalarFn value = [f, clock, check](double s) {
    check(s);
    return f(clock.psi_inv(s));
  };
  ScalarFn first;
  if (f.has_derivative()) {
    first = [f, clock, check](double s) {
      check(s);
      const double t = clock.psi_inv(s);
      return pow_nonneg(t, 1.0 - clock.delta()) * f.derivative(t);
    };
  }
  return FunctionHandle(std::move(value), std::move(first));
}

FunctionHandle TimeIsometry::inverse(const FunctionHandle& g) const {
  const Clock clock = clock_;
  const double top = horizon_ * (1.0 + 1e-14);
  return FunctionHandle([g, clock, top](double t) {
    if (!(t >= 0.0 && t <= top)) throw DomainError("time isometry inverse: evaluation outside (0, T)");
    return g(clock.psi(t));
  });
}

FunctionHandle time_isometry_apply(const TimeIsometry& iso, const FunctionHandle& f) { return iso.apply(f); }

FunctionHandle SpatialUnitary::apply(const FunctionHandle& f, Direction direction) const {
  const double d = order_.value();
  if (direction == Direction::kForward) {
    const double scale = 1.0 / std::sqrt(d);
    ScalarFn value = [f, d, scale](double xi) {
      require_unit_interval(xi, "spatial unitary");
      return scale * f(pow_nonneg(xi, 1.0 / d));
    };
    ScalarFn first;
    if (f.has_derivative()) {
      // d/dξ f(ξ^{1/δ}) = f'(x) x^{1-δ} / δ with x = ξ^{1/δ}.
      first = [f, d, scale](double xi) {
        require_unit_interval(xi, "spatial unitary");
        const double x = pow_nonneg(xi, 1.0 / d);
        return scale * f.derivative(x) * pow_nonneg(x, 1.0 - d) / d;
      };
    }
    return FunctionHandle(std::move(value), std::move(first));
  }
  const double scale = std::sqrt(d);
  ScalarFn value = [f, d, scale](double x) {
    require_unit_interval(x, "spatial unitary inverse");
    return scale * f(pow_nonneg(x, d));
  };
  ScalarFn first;
  if (f.has_derivative()) {
    first = [f, d, scale](double x) {
      require_unit_interval(x, "spatial unitary inverse");
      return scale * f.derivative(pow_nonneg(x, d)) * d * std::pow(x, d - 1.0);
    };
  }
  return FunctionHandle(std::move(value), std::move(first));
}

FunctionHandle spatial_unitary_apply(const SpatialUnitary& u, const FunctionHandle& f, Direction direction) {
  return u.apply(f, direction);
}

WeightSpec::WeightSpec(Order alpha_in, FunctionHandle rho_in) : alpha(alpha_in), rho(std::move(rho_in)) {
  for (double x : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const Complex v = rho(x);
    if (!(v.real() > 0.0) || v.imag() != 0.0) throw DomainError("WeightSpec: weight must be positive");
  }
}

FunctionHandle transported_weight(const WeightSpec& w) {
  const Clock clock(w.alpha);
  return FunctionHandle([rho = w.rho, clock](double xi) { return rho(clock.psi_inv(xi)); });
}

}  // namespace conformable
