#include "conformable/calculus.hpp"

#include <cmath>
#include <sstream>

#include "conformable/errors.hpp"

namespace conformable {

namespace {

void require_positive_time(double t, const char* what) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    std::ostringstream msg;
    msg << what << ": requires t > 0, got " << t;
    throw DomainError(msg.str());
  }
}

}  // namespace

Complex conf_derivative(const FunctionHandle& f, Order order, double t) {
  require_positive_time(t, "conf_derivative");
  if (!f.has_derivative()) throw CapabilityError("conf_derivative: function has no classical derivative");
  return pow_nonneg(t, 1.0 - order.value()) * f.derivative(t);
}

Complex conf_derivative_limit(const FunctionHandle& f, Order order, double t, LimitOptions opts) {
  require_positive_time(t, "conf_derivative_limit");
  const double stretch = pow_nonneg(t, 1.0 - order.value());
  const Complex base = f(t);

  double h = opts.h0;
  Complex prev_quotient = (f(t + h * stretch) - base) / h;
  Complex prev_extrap{};
  bool have_extrap = false;
  double last_gap = 0.0;
  for (int k = 1; h * 0.5 >= opts.h_min; ++k) {
    h *= 0.5;
    const Complex quotient = (f(t + h * stretch) - base) / h;
    const Complex extrap = 2.0 * quotient - prev_quotient;
    if (have_extrap) {
      last_gap = std::abs(extrap - prev_extrap);
      if (last_gap <= opts.rel_tol * std::abs(extrap)) return extrap;
    }
    prev_extrap = extrap;
    have_extrap = true;
    prev_quotient = quotient;
  }
  std::ostringstream msg;
  msg << "conf_derivative_limit: extrapolants did not settle at t=" << t << " (delta=" << order.value()
      << ", last h=" << h << ", last gap=" << last_gap << ", last value=" << prev_extrap << ")";
  throw NumericalError(msg.str());
}

Complex conf_derivative_limit(const FunctionHandle& f, Order order, double t, double h_min) {
  LimitOptions opts;
  opts.h_min = h_min;
  return conf_derivative_limit(f, order, t, opts);
}

Complex conf_integral(const FunctionHandle& f, Order order, double a, double t, QuadratureRule rule) {
  if (!(t > a)) throw DomainError("conf_integral: upper terminal must exceed lower terminal");
  const WeightedQuadrature quad(order, a, t, rule);
  return quad.integrate(f.value_fn());
}

Complex conf_derivative_iterated(const FunctionHandle& f, Order order, int k, double t) {
  if (k != 1 && k != 2) throw ConfigError("conf_derivative_iterated: only k = 1 or k = 2 is supported");
  require_positive_time(t, "conf_derivative_iterated");
  const double d = order.value();
  if (k == 1) return conf_derivative(f, order, t);
  if (!f.has_derivative() || !f.has_second_derivative()) {
    throw CapabilityError("conf_derivative_iterated: k = 2 needs first and second derivatives");
  }
  // t^{1-δ} d/dt [t^{1-δ} f'(t)] expanded by the product rule.
  const Complex first = f.derivative(t);
  const Complex second = f.second_derivative(t);
  Complex out = pow_nonneg(t, 2.0 - 2.0 * d) * second;
  if (d != 1.0) out += (1.0 - d) * std::pow(t, 1.0 - 2.0 * d) * first;
  return out;
}

FunctionHandle conf_integral_handle(const FunctionHandle& f, Order order, QuadratureRule rule) {
  return FunctionHandle([f, order, rule](double t) -> Complex {
    if (t == 0.0) return Complex{};
    return conf_integral(f, order, 0.0, t, rule);
  });
}

}  // namespace conformable
