#include "conformable/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "conformable/errors.hpp"

namespace conformable {

GaussLegendreRule gauss_legendre(int points) {
  if (points < 1) throw ConfigError("Gauss-Legendre rule needs at least one point");
  GaussLegendreRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  const int half = (points + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 0; j < points; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      dp = points * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute P_n' at the converged root for the weight.
    double p0 = 1.0;
    double p1 = 0.0;
    for (int j = 0; j < points; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
    }
    dp = points * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[points - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[points - 1 - i] = w;
  }
  if (points % 2 == 1) rule.nodes[points / 2] = 0.0;
  return rule;
}

Complex integrate_plain(const ScalarFn& g, double a, double b, QuadratureRule rule) {
  if (!(b > a)) throw DomainError("integrate_plain: empty interval");
  const GaussLegendreRule gl = gauss_legendre(rule.points);
  if (rule.panels < 1 || !(rule.grading >= 1.0)) throw ConfigError("integrate_plain: needs panels >= 1, grading >= 1");
  auto edge = [&](int p) {
    if (p == rule.panels) return b;
    const double u = static_cast<double>(p) / rule.panels;
    return a + (b - a) * (rule.grading == 1.0 ? u : std::pow(u, rule.grading));
  };
  Complex total{};
  for (int p = 0; p < rule.panels; ++p) {
    const double lo = edge(p);
    const double hi = edge(p + 1);
    const double mid = 0.5 * (lo + hi);
    const double rad = 0.5 * (hi - lo);
    Complex panel{};
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) panel += gl.weights[k] * g(mid + rad * gl.nodes[k]);
    total += rad * panel;
  }
  return total;
}

double clock_grading(Order order, int points) {
  const double inv = 1.0 / order.value();
  if (std::abs(inv - std::round(inv)) < 1e-12) return 1.0;
  return std::max(1.0, 2.0 * points / (1.0 + inv));
}

WeightedQuadrature::WeightedQuadrature(Order order, double a, double b, QuadratureRule rule)
    : order_(order), a_(a), b_(b), rule_(rule) {
  if (!(a >= 0.0) || !(b > a) || !std::isfinite(b)) {
    throw DomainError("weighted quadrature needs 0 <= a < b < inf");
  }
  if (rule.panels < 1 || rule.points < 1) throw ConfigError("quadrature needs panels >= 1 and points >= 1");

  const Clock clock(order);
  const double s_lo = clock.psi(a);
  const double s_hi = clock.psi(b);
  if (a == 0.0) grading_ = clock_grading(order, rule.points);

  std::vector<double> breaks(rule.panels + 1);
  for (int p = 0; p <= rule.panels; ++p) {
    const double u = static_cast<double>(p) / rule.panels;
    breaks[p] = s_lo + (s_hi - s_lo) * std::pow(u, grading_);
  }
  breaks.back() = s_hi;

  const GaussLegendreRule gl = gauss_legendre(rule.points);
  nodes_.reserve(rule.panels * rule.points);
  weights_.reserve(rule.panels * rule.points);
  for (int p = 0; p < rule.panels; ++p) {
    const double mid = 0.5 * (breaks[p] + breaks[p + 1]);
    const double rad = 0.5 * (breaks[p + 1] - breaks[p]);
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
      nodes_.push_back(mid + rad * gl.nodes[k]);
      weights_.push_back(rad * gl.weights[k]);
    }
  }
  time_nodes_.reserve(nodes_.size());
  for (double s : nodes_) time_nodes_.push_back(clock.psi_inv(s));
}

Complex WeightedQuadrature::integrate(const ScalarFn& f) const {
  Complex total{};
  for (std::size_t k = 0; k < nodes_.size(); ++k) total += weights_[k] * f(time_nodes_[k]);
  return total;
}

double WeightedQuadrature::integrate_real(const std::vector<double>& samples) const {
  if (samples.size() != nodes_.size()) throw ConfigError("sample count does not match quadrature nodes");
  double total = 0.0;
  for (std::size_t k = 0; k < nodes_.size(); ++k) total += weights_[k] * samples[k];
  return total;
}

}  // namespace conformable
