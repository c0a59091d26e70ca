#include "conformable/clock.hpp"

#include <cmath>
#include <string>

#include "conformable/errors.hpp"

namespace conformable {

namespace {
constexpr double kNegativeDust = 1e-15;
}

Order::Order(double delta) : delta_(delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw DomainError("conformable order must lie in (0, 1], got " + std::to_string(delta));
  }
}

double clamp_nonneg(double t, const char* what) {
  if (std::isnan(t)) throw DomainError(std::string(what) + ": NaN argument");
  if (t >= 0.0) return t;
  if (t > -kNegativeDust) return 0.0;
  throw DomainError(std::string(what) + ": negative argument " + std::to_string(t));
}

double pow_nonneg(double t, double p) {
  if (t == 0.0) return 0.0;
  if (p == 1.0) return t;
  return std::exp(p * std::log(t));
}

double Clock::psi(double t) const {
  t = clamp_nonneg(t, "psi");
  const double d = delta();
  return pow_nonneg(t, d) / d;
}

double Clock::psi_inv(double s) const {
  s = clamp_nonneg(s, "psi_inv");
  const double d = delta();
  return pow_nonneg(d * s, 1.0 / d);
}

}  // namespace conformable
