#include "conformable/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "conformable/errors.hpp"
#include "conformable/quadrature.hpp"

namespace conformable {

namespace {

const GaussLegendreRule& unit_rule() {
  static const GaussLegendreRule rule = gauss_legendre(64);
  return rule;
}

// Fixed real functionals paired with φ_λ in the analyticity test.
const std::vector<ScalarFn>& test_functionals() {
  static const std::vector<ScalarFn> fns{
      [](double) -> Complex { return 1.0; },
      [](double s) -> Complex { return s; },
      [](double s) -> Complex { return std::sin(std::numbers::pi * s); },
  };
  return fns;
}

std::complex<double> contour_mean(const std::function<std::complex<double>(std::complex<double>)>& fn,
                                  std::complex<double> center, double radius, int points) {
  std::complex<double> acc = 0.0;
  for (int k = 0; k < points; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / points;
    acc += fn(center + std::polar(radius, theta));
  }
  return acc / static_cast<double>(points);
}

double complex_det_abs(Matrix g) {
  return std::abs(g.fullPivLu().determinant());
}

}  // namespace

std::complex<double> l2_unit_inner(const ScalarFn& f, const ScalarFn& g) {
  const GaussLegendreRule& rule = unit_rule();
  std::complex<double> acc = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double s = 0.5 * (rule.nodes[k] + 1.0);
    acc += 0.5 * rule.weights[k] * f(s) * std::conj(g(s));
  }
  return acc;
}

DswCondition dsw_condition_check(const DriftDiffusionParams& p) {
  DswCondition out;
  out.ratio = p.b * p.b / (2.0 * p.a);
  out.lower_margin = out.ratio - p.c;
  out.upper_margin = 1.0 - out.ratio;
  out.holds = p.c < out.ratio && out.ratio < 1.0;
  return out;
}

std::vector<std::complex<double>> LambdaRectangle::samples() const {
  if (re_count < 1 || im_count < 1) throw ConfigError("LambdaRectangle: counts must be positive");
  std::vector<std::complex<double>> out;
  for (int i = 0; i < re_count; ++i) {
    const double re = re_count == 1 ? re_min : re_min + (re_max - re_min) * i / (re_count - 1);
    for (int j = 0; j < im_count; ++j) {
      const double im = im_count == 1 ? im_min : im_min + (im_max - im_min) * j / (im_count - 1);
      out.emplace_back(re, im);
    }
  }
  return out;
}

DSWReport dsw_hypotheses_probe(const EigenfunctionFamily& fam, const LambdaRectangle& rect, int n,
                               const DswProbeOptions& opts) {
  const auto lambdas = rect.samples();
  if (lambdas.size() < 9) throw ConfigError("dsw_hypotheses_probe: rectangle needs at least 9 samples");
  if (!std::any_of(lambdas.begin(), lambdas.end(), [](auto l) { return l.real() == 0.0; })) {
    throw ConfigError("dsw_hypotheses_probe: rectangle must contain samples on the imaginary axis");
  }
  DSWReport report;
  report.coefficients = fam.coefficients();

  report.eigen_ok = true;
  for (auto lambda : lambdas) {
    const EigenResidual r = eigen_residual(fam, lambda, n);
    LambdaSample sample{lambda, r.residual, 10.0 * r.h * r.h * r.fourth_derivative_scale, false};
    sample.passed = sample.residual <= sample.bound;
    report.eigen_ok = report.eigen_ok && sample.passed;
    report.v_samples.push_back(sample);
    if (lambda.real() == 0.0) report.imag_axis_samples.push_back(sample);
  }

  report.analyticity_ok = true;
  for (auto lambda : lambdas) {
    double worst = 0.0;
    for (const auto& test : test_functionals()) {
      auto pairing = [&](std::complex<double> mu) {
        return l2_unit_inner([&](double s) { return fam.evaluate(mu, s); }, test);
      };
      const std::complex<double> center = pairing(lambda);
      const std::complex<double> wide = contour_mean(pairing, lambda, opts.contour_radius, opts.contour_points);
      const std::complex<double> narrow = contour_mean(pairing, lambda, 0.5 * opts.contour_radius, opts.contour_points);
      const double scale = std::max(std::abs(center), 1e-300);
      worst = std::max(worst, std::abs(wide - center) / scale);
      report.radius_dependence = std::max(report.radius_dependence, std::abs(wide - narrow) / scale);
    }
    report.analyticity_residuals.push_back(worst);
    report.analyticity_ok = report.analyticity_ok && worst <= opts.analyticity_tol;
  }
  report.analyticity_ok = report.analyticity_ok && report.radius_dependence <= opts.analyticity_tol;

  const auto& gl = opts.gram_lambdas;
  const Eigen::Index m = static_cast<Eigen::Index>(gl.size());
  std::vector<ScalarFn> normalized;
  for (auto lambda : gl) {
    ScalarFn phi = [&fam, lambda](double s) { return fam.evaluate(lambda, s); };
    const double norm = std::sqrt(l2_unit_inner(phi, phi).real());
    normalized.push_back([phi, norm](double s) { return phi(s) / norm; });
  }
  Matrix gram(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) gram(i, j) = l2_unit_inner(normalized[i], normalized[j]);
  }
  report.separation_gram = complex_det_abs(gram);
  report.separation_ok = report.separation_gram > opts.gram_threshold;
  return report;
}

DSWReport dsw_hypotheses_probe(const DriftDiffusionParams& p, const LambdaRectangle& rect, int n,
                               const DswProbeOptions& opts) {
  DSWReport report = dsw_hypotheses_probe(EigenfunctionFamily(p), rect, n, opts);
  report.condition = dsw_condition_check(p);
  return report;
}

CheckReport clock_invariance_check(const ConformableSemigroup& cs, const Vector& x, std::span<const double> s_list) {
  if (s_list.empty()) throw ConfigError("clock_invariance_check: s_list must be nonempty");
  const GeneratorMatrix& g = cs.generator();
  const double x_norm = std::max(g.norm(x), 1e-300);
  double worst = 0.0;
  for (double s : s_list) {
    const Vector classical = cs.base().evolve(s, x);
    const Vector conformable = cs.evolve(cs.clock().psi_inv(s), x);
    worst = std::max(worst, g.norm(conformable - classical) / x_norm);
    worst = std::max(worst, std::abs(g.norm(conformable - x) - g.norm(classical - x)) / x_norm);
    worst = std::max(worst, std::abs(g.norm(conformable) - g.norm(classical)) / x_norm);
  }
  CheckReport report = make_report("clock_invariance", worst, 1e-13);
  report.params["generator"] = g.label();
  report.params["delta"] = format_param(cs.clock().delta());
  return report;
}

std::vector<X0Record> x0_probe(const EigenfunctionFamily&, std::complex<double> lambda, std::span<const double> t_grid) {
  if (!(lambda.real() < 0.0)) throw DomainError("x0_probe: requires Re lambda < 0");
  std::vector<X0Record> out;
  double previous = std::numeric_limits<double>::infinity();
  bool monotone = true;
  for (double t : t_grid) {
    const auto evolved = spectral_evolve({{lambda, 1.0}}, t);
    X0Record r;
    r.lambda = lambda;
    r.t = t;
    r.magnitude = std::abs(evolved.front().coeff);
    r.error = std::abs(r.magnitude - std::exp(lambda.real() * t));
    monotone = monotone && r.magnitude <= previous;
    previous = r.magnitude;
    r.passed = r.error <= r.tolerance && monotone;
    out.push_back(r);
  }
  return out;
}

XinfRecord xinf_probe(const EigenfunctionFamily& fam, std::complex<double> lambda, double eps) {
  if (!(lambda.real() > 0.0)) throw DomainError("xinf_probe: requires Re lambda > 0");
  if (!(eps > 0.0)) throw DomainError("xinf_probe: requires eps > 0");
  XinfRecord r;
  r.lambda = lambda;
  r.eps = eps;
  const ScalarFn phi = [&fam, lambda](double s) { return fam.evaluate(lambda, s); };
  r.phi_norm = std::sqrt(l2_unit_inner(phi, phi).real());
  const double eps_inner = 0.999 * eps;
  // Target x = φ_λ/‖φ_λ‖ has unit norm, so ‖y‖ = e^{−Re λ t*}.
  r.t_star = std::max(0.0, std::log(1.0 / eps_inner) / lambda.real());
  const std::complex<double> target = 1.0 / r.phi_norm;
  const std::complex<double> seed = std::exp(-lambda * r.t_star) * target;
  r.seed_norm = std::abs(seed) * r.phi_norm;
  const auto evolved = spectral_evolve({{lambda, seed}}, r.t_star);
  r.terminal_error = std::abs(evolved.front().coeff - target) * r.phi_norm;
  r.passed = r.seed_norm < eps && r.terminal_error <= r.tolerance && r.terminal_error < eps;
  return r;
}

PeriodicRecord periodic_orbit_check(const EigenfunctionFamily&, double omega, Order order) {
  if (!(omega > 0.0)) throw DomainError("periodic_orbit_check: requires omega > 0");
  PeriodicRecord r;
  r.omega = omega;
  r.period = 2.0 * std::numbers::pi / omega;
  const Clock clock(order);
  r.conformable_return_time = clock.psi_inv(r.period);

  const std::complex<double> iw(0.0, omega);
  const std::vector<SpectralTerm> combo{{iw, 1.0}, {-iw, 1.0}};
  double ret = 0.0;
  double half = 0.0;
  const auto full = spectral_evolve(combo, r.period);
  const auto mid = spectral_evolve(combo, 0.5 * r.period);
  for (std::size_t k = 0; k < combo.size(); ++k) {
    ret = std::max(ret, std::abs(full[k].coeff - combo[k].coeff));
    half = std::max(half, std::abs(mid[k].coeff + combo[k].coeff));
  }
  r.return_error = ret;
  r.half_period_error = half;

  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = iw;
  a(1, 1) = -iw;
  const ConformableSemigroup cs(GeneratorMatrix(a, "eigen_pair"), order);
  Vector x(2);
  x << 1.0, 1.0;
  const double s_list[] = {r.period};
  const CheckReport transfer = clock_invariance_check(cs, x, s_list);
  r.conformable_return_error = cs.generator().norm(cs.evolve(r.conformable_return_time, x) - x);
  r.passed = r.return_error <= r.tolerance && r.half_period_error <= r.tolerance &&
             r.conformable_return_error <= r.tolerance && transfer.passed;
  return r;
}

}  // namespace conformable
