#include "conformable/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "conformable/calculus.hpp"
#include "conformable/errors.hpp"

namespace conformable {

namespace {

void require_nonneg_time(double t, const char* what) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError(std::string(what) + ": requires t >= 0");
}

}  // namespace

TransportModel::TransportModel(Order alpha, WeightSpec weight) : weight_(std::move(weight)), clock_(alpha) {
  if (!(weight_.alpha == alpha)) throw ConfigError("TransportModel: weight order differs from the model order");
}

FunctionHandle apply_S_alpha(const TransportModel& m, const FunctionHandle& f, double t) {
  require_nonneg_time(t, "apply_S_alpha");
  if (t == 0.0) return f;
  const Clock clock(m.alpha());
  auto shifted = [clock, t](double x) { return clock.psi_inv(clock.psi(x) + t); };
  if (!f.has_derivative()) return FunctionHandle([f, shifted](double x) { return f(shifted(x)); });
  const double e = 1.0 - m.alpha().value();
  // dy/dx = y^{1-α} x^{α-1} for y = ψ⁻¹(ψ(x) + t).
  return FunctionHandle([f, shifted](double x) { return f(shifted(x)); },
                        [f, shifted, e](double x) {
                          const double y = shifted(x);
                          return f.derivative(y) * std::pow(y, e) * std::pow(x, -e);
                        });
}

FunctionHandle apply_Q(const TransportModel& m, const FunctionHandle& f, Direction direction) {
  const Clock clock(m.alpha());
  if (direction == Direction::kForward) {
    return FunctionHandle([f, clock](double xi) { return f(clock.psi_inv(xi)); });
  }
  return FunctionHandle([f, clock](double x) { return f(clock.psi(x)); });
}

FunctionHandle apply_W(const FunctionHandle& g, double t) {
  require_nonneg_time(t, "apply_W");
  if (t == 0.0) return g;
  return FunctionHandle([g, t](double xi) { return g(xi + t); });
}

double transport_conjugacy_residual(const TransportModel& m, const FunctionHandle& f, double t,
                                    std::span<const double> xi_samples) {
  const FunctionHandle lhs = apply_Q(m, apply_S_alpha(m, f, t), Direction::kForward);
  const FunctionHandle rhs = apply_W(apply_Q(m, f, Direction::kForward), t);
  double worst = 0.0;
  for (double xi : xi_samples) worst = std::max(worst, std::abs(lhs(xi) - rhs(xi)));
  return worst;
}

double transport_pde_residual(const TransportModel& m, const FunctionHandle& f, double t,
                              std::span<const double> x_samples) {
  if (!(t > 0.0)) throw DomainError("transport_pde_residual: requires t > 0");
  if (!f.has_derivative()) throw CapabilityError("transport_pde_residual: f needs a first derivative");
  constexpr double kStep = 1e-5;
  const FunctionHandle now = apply_S_alpha(m, f, t);
  const FunctionHandle later = apply_S_alpha(m, f, t + kStep);
  const FunctionHandle earlier = apply_S_alpha(m, f, std::max(0.0, t - kStep));
  const double back = std::min(t, kStep);
  double worst = 0.0;
  for (double x : x_samples) {
    const Complex dt = (later(x) - earlier(x)) / (kStep + back);
    const Complex dx = conf_derivative(now, m.alpha(), x);
    worst = std::max(worst, std::abs(dt - dx));
  }
  return worst;
}

CheckReport weight_criterion_probe(const TransportModel& m, std::span<const double> window_ends, double threshold) {
  if (window_ends.size() < 3) throw ConfigError("weight_criterion_probe: needs at least 3 windows");
  constexpr int kSamples = 257;
  const FunctionHandle rho = transported_weight(m.weight());
  std::vector<double> infima;
  double last_end = 0.0;
  for (double e : window_ends) {
    if (!(e > last_end)) throw ConfigError("weight_criterion_probe: window ends must be positive and increasing");
    last_end = e;
    double inf = std::numeric_limits<double>::infinity();
    for (int k = 0; k < kSamples; ++k) inf = std::min(inf, rho(e + e * k / (kSamples - 1)).real());
    infima.push_back(inf);
  }
  bool decreasing = true;
  for (std::size_t k = 1; k < infima.size(); ++k) decreasing = decreasing && infima[k] < infima[k - 1];
  const double residual = decreasing ? infima.back() : *std::max_element(infima.begin(), infima.end());
  CheckReport report = make_report("weight_criterion_probe", residual, threshold);
  report.label = "HEURISTIC";
  report.params["alpha"] = format_param(m.alpha().value());
  std::string ends;
  std::string infs;
  for (std::size_t k = 0; k < infima.size(); ++k) {
    ends += (k ? ";" : "") + format_param(window_ends[k]);
    infs += (k ? ";" : "") + format_param(infima[k]);
  }
  report.params["window_ends"] = ends;
  report.params["infima"] = infs;
  return report;
}

namespace weights {

FunctionHandle exp_decay() {
  return FunctionHandle([](double x) -> Complex { return std::exp(-x); });
}

FunctionHandle constant() {
  return FunctionHandle([](double) -> Complex { return 1.0; });
}

FunctionHandle exp_growth() {
  return FunctionHandle([](double x) -> Complex { return std::exp(x); });
}

FunctionHandle by_name(const std::string& name) {
  if (name == "exp_decay") return exp_decay();
  if (name == "constant") return constant();
  if (name == "exp_growth") return exp_growth();
  throw ConfigError("unknown weight '" + name + "' (expected exp_decay, constant or exp_growth)");
}

}  // namespace weights

}  // namespace conformable
