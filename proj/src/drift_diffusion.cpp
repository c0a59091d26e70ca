#include "conformable/drift_diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "conformable/calculus.hpp"
#include "conformable/errors.hpp"

namespace conformable {

namespace {

constexpr int kExcludedRows = 3;

// Fornberg weights for derivatives 0..m at x0 on the given nodes;
// out[j][k] multiplies f(nodes[j]) in the k-th derivative.
std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> nodes, int m) {
  const std::size_t count = nodes.size();
  std::vector<std::vector<double>> c(count, std::vector<double>(static_cast<std::size_t>(m) + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < count; ++i) {
    const int mn = std::min(static_cast<int>(i), m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k > 0; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k > 0; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  return c;
}

double interior_max(const Vector& v) {
  double worst = 0.0;
  for (Eigen::Index i = kExcludedRows; i < v.size() - kExcludedRows; ++i) worst = std::max(worst, std::abs(v[i]));
  return worst;
}

Vector sample(const ScalarFn& g, const std::vector<double>& nodes) {
  Vector out(static_cast<Eigen::Index>(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) out[static_cast<Eigen::Index>(i)] = g(nodes[i]);
  return out;
}

std::complex<double> int_pow(std::complex<double> z, int k) {
  std::complex<double> out = 1.0;
  for (int i = 0; i < k; ++i) out *= z;
  return out;
}

}  // namespace

DriftDiffusionParams::DriftDiffusionParams(double a_, double b_, double c_, Order delta_)
    : a(a_), b(b_), c(c_), delta(delta_) {
  if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0) || !std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
    std::ostringstream msg;
    msg << "DriftDiffusionParams: a, b, c must be positive, got (" << a << ", " << b << ", " << c << ")";
    throw ConfigError(msg.str());
  }
}

TransferredCoefficients parameter_transfer(const DriftDiffusionParams& p) {
  const double d = p.delta.value();
  return {p.a * d * d, p.b * d, p.c};
}

GridPair::GridPair(int n, Order delta) : n_(n), h_(0.0), order_(delta) {
  if (n < 8) throw ConfigError("GridPair: n must be at least 8");
  h_ = 1.0 / (n + 1);
  const double inv = 1.0 / delta.value();
  xi_.reserve(static_cast<std::size_t>(n));
  x_.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const double xi = i * h_;
    xi_.push_back(xi);
    x_.push_back(std::pow(xi, inv));
  }
}

std::vector<double> GridPair::xi_with_ends() const {
  std::vector<double> out{0.0};
  out.insert(out.end(), xi_.begin(), xi_.end());
  out.push_back(1.0);
  return out;
}

std::vector<double> GridPair::x_with_ends() const {
  std::vector<double> out{0.0};
  out.insert(out.end(), x_.begin(), x_.end());
  out.push_back(1.0);
  return out;
}

Matrix drift_diffusion_matrix(double diffusion, double drift, double reaction, double delta,
                              std::span<const double> nodes, RightBoundary right) {
  const int n = static_cast<int>(nodes.size()) - 2;
  if (n < 4) throw ConfigError("drift_diffusion_matrix: need at least 4 interior nodes");
  const double e = 1.0 - delta;
  Matrix m = Matrix::Zero(n, n);
  auto put = [&](int row, int node, double v) {
    if (node >= 1 && node <= n) m(row, node - 1) += v;
  };
  for (int i = 1; i <= n; ++i) {
    const int row = i - 1;
    const double z = nodes[i];
    const double w = std::pow(z, e);
    if (i < n || right == RightBoundary::kDirichlet) {
      const double h1 = z - nodes[i - 1];
      const double h2 = nodes[i + 1] - z;
      const double wp = std::pow(0.5 * (z + nodes[i + 1]), e);
      const double wm = std::pow(0.5 * (z + nodes[i - 1]), e);
      const double cm = -h2 / (h1 * (h1 + h2));
      const double c0 = (h2 - h1) / (h1 * h2);
      const double cp = h1 / (h2 * (h1 + h2));
      const double s = 2.0 / (h1 + h2);
      put(row, i - 1, diffusion * w * s * wm / h1 + drift * w * cm);
      put(row, i, -diffusion * w * s * (wp / h2 + wm / h1) + drift * w * c0 + reaction);
      put(row, i + 1, diffusion * w * s * wp / h2 + drift * w * cp);
    } else {
      // z^{2-2δ} f'' + (1-δ) z^{1-2δ} f' from one-sided weights.
      const double stencil[4] = {nodes[i - 3], nodes[i - 2], nodes[i - 1], z};
      const auto fw = fornberg_weights(z, stencil, 2);
      for (int k = 0; k < 4; ++k) {
        double v = diffusion * (w * w * fw[k][2] + e * (w * w / z) * fw[k][1]) + drift * w * fw[k][1];
        if (k == 3) v += reaction;
        put(row, i - 3 + k, v);
      }
    }
  }
  return m;
}

GeneratorMatrix build_classical_operator(const DriftDiffusionParams& p, const GridPair& grid, RightBoundary right) {
  const TransferredCoefficients t = parameter_transfer(p);
  const auto nodes = grid.xi_with_ends();
  return GeneratorMatrix(drift_diffusion_matrix(t.a_tilde, t.b_tilde, t.c, 1.0, nodes, right),
                         RealVector::Constant(grid.n(), grid.h()), "classical_drift_diffusion");
}

GeneratorMatrix build_conformable_operator(const DriftDiffusionParams& p, const GridPair& grid, RightBoundary right) {
  if (!(p.delta == grid.order())) throw ConfigError("build_conformable_operator: grid order does not match parameters");
  const auto nodes = grid.x_with_ends();
  const double d = p.delta.value();
  return GeneratorMatrix(drift_diffusion_matrix(p.a, p.b, p.c, d, nodes, right),
                         RealVector::Constant(grid.n(), grid.h() / d), "conformable_drift_diffusion");
}

DiscreteUnitary discrete_unitary(const GridPair& grid, Order delta) {
  if (!(grid.order() == delta)) throw ConfigError("discrete_unitary: grid was built for a different order");
  const Eigen::Index n = grid.n();
  const double d = delta.value();
  return {Matrix::Identity(n, n) * (1.0 / std::sqrt(d)), Matrix::Identity(n, n) * std::sqrt(d)};
}

std::vector<ScalarFn> conjugacy_core_functions() {
  return {
      [](double s) -> Complex { return std::pow(std::sin(std::numbers::pi * s), 4); },
      [](double s) -> Complex { return s * s * s * s * std::exp(-s); },
      [](double s) -> Complex {
        if (!(s > 0.1 && s < 0.9)) return 0.0;
        const double u = (s - 0.1) / 0.8;
        return std::exp(1.0 - 1.0 / (4.0 * u * (1.0 - u)));
      },
  };
}

std::vector<std::pair<int, double>> conjugacy_residual(const DriftDiffusionParams& p, std::span<const int> n_list) {
  std::vector<std::pair<int, double>> out;
  int previous = 0;
  for (int n : n_list) {
    if (n < 16 || n <= previous) throw ConfigError("conjugacy_residual: n_list must be increasing with entries >= 16");
    previous = n;
    const GridPair grid(n, p.delta);
    const GeneratorMatrix conf = build_conformable_operator(p, grid);
    const GeneratorMatrix classical = build_classical_operator(p, grid);
    const DiscreteUnitary u = discrete_unitary(grid, p.delta);
    const Matrix diff = u.forward * conf.entries() * u.inverse - classical.entries();
    double worst = 0.0;
    for (const auto& g : conjugacy_core_functions()) worst = std::max(worst, interior_max(diff * sample(g, grid.xi_nodes())));
    out.emplace_back(n, worst);
  }
  return out;
}

std::vector<double> empirical_orders(const std::vector<std::pair<int, double>>& residuals) {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < residuals.size(); ++k) {
    const double ratio = residuals[k].second / residuals[k + 1].second;
    const double refinement = static_cast<double>(residuals[k + 1].first) / residuals[k].first;
    out.push_back(std::log(ratio) / std::log(refinement));
  }
  return out;
}

CheckReport conjugacy_convergence_check(const DriftDiffusionParams& p, std::span<const int> n_list, double min_order) {
  const auto residuals = conjugacy_residual(p, n_list);
  double largest = 0.0;
  for (const auto& r : residuals) largest = std::max(largest, r.second);
  CheckReport report;
  if (largest <= 1e-12) {
    report = make_report("conjugacy_convergence", largest, 1e-12);
  } else {
    // r_{k+1}/r_k · (n_{k+1}/n_k)^{min_order} ≤ 1 iff the local order is ≥ min_order.
    double worst = 0.0;
    double observed = std::numeric_limits<double>::infinity();
    const auto orders = empirical_orders(residuals);
    for (std::size_t k = 0; k + 1 < residuals.size(); ++k) {
      const double refinement = static_cast<double>(residuals[k + 1].first) / residuals[k].first;
      const double factor = residuals[k + 1].second / residuals[k].second * std::pow(refinement, min_order);
      worst = std::max(worst, std::isnan(factor) ? std::numeric_limits<double>::infinity() : factor);
      observed = std::min(observed, orders[k]);
    }
    report = make_report("conjugacy_convergence", worst, 1.0);
    report.params["observed_order"] = format_param(observed);
  }
  report.params["a"] = format_param(p.a);
  report.params["b"] = format_param(p.b);
  report.params["c"] = format_param(p.c);
  report.params["delta"] = format_param(p.delta.value());
  std::string ns;
  for (const auto& r : residuals) ns += (ns.empty() ? "" : ";") + std::to_string(r.first) + ":" + format_param(r.second);
  report.params["residuals"] = ns;
  return report;
}

EigenfunctionFamily::EigenfunctionFamily(const DriftDiffusionParams& p) : coeff_(parameter_transfer(p)) {}

EigenfunctionFamily::EigenfunctionFamily(TransferredCoefficients coefficients) : coeff_(coefficients) {
  if (!(coeff_.a_tilde > 0.0)) throw ConfigError("EigenfunctionFamily: diffusion coefficient must be positive");
}

std::pair<std::complex<double>, std::complex<double>> EigenfunctionFamily::roots(std::complex<double> lambda) const {
  const double at = coeff_.a_tilde;
  const double bt = coeff_.b_tilde;
  const std::complex<double> m = -bt / (2.0 * at);
  const std::complex<double> d = std::sqrt(bt * bt - 4.0 * at * (coeff_.c - lambda)) / (2.0 * at);
  return {m + d, m - d};
}

std::complex<double> EigenfunctionFamily::evaluate(std::complex<double> lambda, double xi, int k) const {
  const auto [mu1, mu2] = roots(lambda);
  const std::complex<double> m = 0.5 * (mu1 + mu2);
  const std::complex<double> d = 0.5 * (mu1 - mu2);
  const std::complex<double> em = std::exp(m * xi);
  if (std::abs(mu1 - mu2) < 1e-8) {
    // k-th derivative of ξ e^{mξ}.
    const std::complex<double> lead = k == 0 ? 0.0 : static_cast<double>(k) * int_pow(m, k - 1);
    return (int_pow(m, k) * xi + lead) * em;
  }
  // (μ₁^k e^{μ₁ξ} − μ₂^k e^{μ₂ξ})/(μ₁−μ₂) = e^{mξ}(P sinh(dξ)/d + Q cosh(dξ)).
  const std::complex<double> p1 = int_pow(mu1, k);
  const std::complex<double> p2 = int_pow(mu2, k);
  const std::complex<double> big_p = 0.5 * (p1 + p2);
  std::complex<double> big_q = 0.0;
  if (k > 0) {
    // ((m+d)^k − (m−d)^k)/(2d) expanded so that no cancellation occurs.
    double binom = 1.0;
    for (int j = 1; j <= k; ++j) {
      binom = binom * (k - j + 1) / j;
      if (j % 2 == 1) big_q += binom * int_pow(m, k - j) * int_pow(d, j - 1);
    }
  }
  return em * (big_p * std::sinh(d * xi) / d + big_q * std::cosh(d * xi));
}

FunctionHandle eigenfunction(const EigenfunctionFamily& fam, std::complex<double> lambda) {
  return FunctionHandle([fam, lambda](double xi) { return fam.evaluate(lambda, xi, 0); },
                        [fam, lambda](double xi) { return fam.evaluate(lambda, xi, 1); },
                        [fam, lambda](double xi) { return fam.evaluate(lambda, xi, 2); });
}

std::vector<SpectralTerm> spectral_evolve(const std::vector<SpectralTerm>& combo, double t) {
  if (!(t >= 0.0)) throw DomainError("spectral_evolve: requires t >= 0");
  std::vector<SpectralTerm> out = combo;
  if (t == 0.0) return out;
  for (auto& term : out) term.coeff *= std::exp(term.lambda * t);
  return out;
}

std::complex<double> spectral_value(const EigenfunctionFamily& fam, const std::vector<SpectralTerm>& combo, double xi) {
  std::complex<double> acc = 0.0;
  for (const auto& term : combo) acc += term.coeff * fam.evaluate(term.lambda, xi);
  return acc;
}

EigenResidual eigen_residual(const EigenfunctionFamily& fam, std::complex<double> lambda, int n) {
  const TransferredCoefficients& t = fam.coefficients();
  const GridPair grid(n, Order(1.0));
  const auto nodes = grid.xi_with_ends();
  const Matrix a = drift_diffusion_matrix(t.a_tilde, t.b_tilde, t.c, 1.0, nodes, RightBoundary::kFree);
  Vector phi(n);
  EigenResidual out;
  out.h = grid.h();
  for (int i = 0; i < n; ++i) phi[i] = fam.evaluate(lambda, grid.xi_nodes()[i]);
  out.residual = interior_max(a * phi - lambda * phi);
  for (int i = kExcludedRows; i < n - kExcludedRows; ++i) {
    out.fourth_derivative_scale = std::max(out.fourth_derivative_scale, std::abs(fam.evaluate(lambda, grid.xi_nodes()[i], 4)));
  }
  return out;
}

CorrespondenceResult mild_solution_correspondence(const DriftDiffusionParams& p, int n) {
  const GridPair grid(n, p.delta);
  const GeneratorMatrix conf = build_conformable_operator(p, grid, RightBoundary::kDirichlet);
  const GeneratorMatrix classical = build_classical_operator(p, grid, RightBoundary::kDirichlet);
  const DiscreteUnitary u = discrete_unitary(grid, p.delta);
  const Matrix mismatch = u.forward * conf.entries() * u.inverse - classical.entries();
  const Vector g = sample(conjugacy_core_functions()[0], grid.xi_nodes());
  const Vector f = u.inverse * g;

  // Mismatch along the conformable trajectory at s = j/80, running maximum.
  constexpr int kSteps = 80;
  const Matrix step = expm((1.0 / kSteps) * conf.entries());
  std::vector<double> running(kSteps + 1);
  Vector state = f;
  double acc = 0.0;
  for (int j = 0; j <= kSteps; ++j) {
    if (j > 0) state = step * state;
    acc = std::max(acc, classical.norm(mismatch * (u.forward * state)));
    running[static_cast<std::size_t>(j)] = acc;
  }

  CorrespondenceResult out;
  double worst = 0.0;
  for (int k = 1; k <= 4; ++k) {
    const double t = 0.25 * k;
    const Vector mapped = u.forward * (expm(t * conf.entries()) * f);
    const Vector direct = expm(t * classical.entries()) * g;
    const double gap = classical.norm(mapped - direct);
    if (k == 4) out.gap_at_one = gap;
    const double bound = t * running[static_cast<std::size_t>(k * kSteps / 4)];
    worst = std::max(worst, bound > 0.0 ? gap / bound : (gap > 0.0 ? INFINITY : 0.0));
  }
  out.report = make_report("mild_solution_correspondence", worst, 5.0);
  out.report.params["a"] = format_param(p.a);
  out.report.params["b"] = format_param(p.b);
  out.report.params["c"] = format_param(p.c);
  out.report.params["delta"] = format_param(p.delta.value());
  out.report.params["n"] = std::to_string(n);
  out.report.params["gap_at_t1"] = format_param(out.gap_at_one);
  return out;
}

double derivative_identity_residual(const FunctionHandle& u, Order delta, int derivative_order,
                                    std::span<const double> xi_samples) {
  if (derivative_order != 1 && derivative_order != 2) {
    throw ConfigError("derivative_identity_residual: order must be 1 or 2");
  }
  const double d = delta.value();
  const double inv = 1.0 / d;
  double worst = 0.0;
  for (double xi : xi_samples) {
    if (!(xi > 0.0)) throw DomainError("derivative_identity_residual: samples must be positive");
    const double x = std::pow(xi, inv);
    const double dx = inv * std::pow(xi, inv - 1.0);
    Complex lhs;
    Complex rhs;
    if (derivative_order == 1) {
      lhs = conf_derivative(u, delta, x);
      rhs = d * u.derivative(x) * dx;
    } else {
      const double ddx = inv * (inv - 1.0) * std::pow(xi, inv - 2.0);
      lhs = conf_derivative_iterated(u, delta, 2, x);
      rhs = d * d * (u.second_derivative(x) * dx * dx + u.derivative(x) * ddx);
    }
    const double scale = std::max(std::abs(rhs), 1e-300);
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

}  // namespace conformable
