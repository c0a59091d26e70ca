#include "conformable/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "conformable/errors.hpp"

namespace conformable {

namespace {

void require_nonneg(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    std::ostringstream msg;
    msg << what << ": requires a finite nonnegative time, got " << v;
    throw DomainError(msg.str());
  }
}

void require_size(const GeneratorMatrix& g, const Vector& x, const char* what) {
  if (x.size() != g.size()) {
    std::ostringstream msg;
    msg << what << ": vector length " << x.size() << " does not match generator size " << g.size();
    throw ConfigError(msg.str());
  }
}

// Neville tableau evaluated at 0. Returns the full-degree extrapolant and the
// one built from all but the coarsest node.
std::pair<Vector, Vector> neville_at_zero(const std::vector<double>& nodes, std::vector<Vector> values) {
  const std::size_t m = values.size();
  Vector runner_up = values.back();
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = 0; i + level < m; ++i) {
      const double si = nodes[i];
      const double sj = nodes[i + level];
      values[i] = (si * values[i + 1] - sj * values[i]) / (si - sj);
    }
    if (level + 2 == m) runner_up = values[1];
  }
  return {values[0], runner_up};
}

Vector extrapolate_quotients(const std::vector<double>& s_nodes, std::vector<Vector> quotients, const char* what) {
  if (quotients.size() < 4) {
    std::ostringstream msg;
    msg << what << ": needs at least 4 sample times, got " << quotients.size();
    throw ConfigError(msg.str());
  }
  // Use the finest six samples; higher degrees only amplify cancellation noise.
  const std::size_t keep = std::min<std::size_t>(6, quotients.size());
  std::vector<double> nodes(s_nodes.end() - static_cast<std::ptrdiff_t>(keep), s_nodes.end());
  std::vector<Vector> tail(quotients.end() - static_cast<std::ptrdiff_t>(keep), quotients.end());
  const double coarse_scale = tail.front().norm();
  auto [best, runner_up] = neville_at_zero(nodes, std::move(tail));
  const double gap = (best - runner_up).norm();
  const double scale = std::max(best.norm(), coarse_scale);
  if (!best.allFinite() || gap > 1e-4 * scale) {
    std::ostringstream msg;
    msg << what << ": extrapolation diverged (gap " << gap << ", scale " << scale << ")";
    throw NumericalError(msg.str());
  }
  return best;
}

}  // namespace

GeneratorMatrix::GeneratorMatrix(Matrix entries, RealVector ip_weights, std::string label)
    : entries_(std::move(entries)), weights_(std::move(ip_weights)), label_(std::move(label)) {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
    throw ConfigError("GeneratorMatrix: entries must be a nonempty square matrix");
  }
  if (weights_.size() != entries_.rows()) throw ConfigError("GeneratorMatrix: weight count must match dimension");
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw ConfigError("GeneratorMatrix: inner-product weights must be positive and finite");
    }
  }
  if (!entries_.allFinite()) throw NumericalError("GeneratorMatrix: non-finite entries");
}

GeneratorMatrix::GeneratorMatrix(Matrix entries, std::string label)
    : GeneratorMatrix(entries, RealVector::Ones(entries.rows()), std::move(label)) {}

Matrix ClassicalSemigroup::propagator(double s) const {
  require_nonneg(s, "ClassicalSemigroup::propagator");
  const Eigen::Index n = generator_.size();
  if (s == 0.0) return Matrix::Identity(n, n);
  return expm(s * generator_.entries());
}

Vector ClassicalSemigroup::evolve(double s, const Vector& x) const {
  require_size(generator_, x, "ClassicalSemigroup::evolve");
  if (s == 0.0) {
    require_nonneg(s, "ClassicalSemigroup::evolve");
    return x;
  }
  return propagator(s) * x;
}

Vector evolve_classical(const GeneratorMatrix& g, double s, const Vector& x) {
  return ClassicalSemigroup(g).evolve(s, x);
}

Vector evolve_conformable(const ConformableSemigroup& cs, double t, const Vector& x) {
  require_nonneg(t, "evolve_conformable");
  return cs.evolve(t, x);
}

double delta_law_residual(const ConformableSemigroup& cs, double r, double q, const Vector& x) {
  require_nonneg(r, "delta_law_residual");
  require_nonneg(q, "delta_law_residual");
  const double inv = 1.0 / cs.clock().delta();
  const Vector joint = cs.evolve(pow_nonneg(r + q, inv), x);
  const Vector split = cs.evolve(pow_nonneg(r, inv), cs.evolve(pow_nonneg(q, inv), x));
  return cs.generator().norm(joint - split);
}

std::vector<double> halving_clock_times(const Clock& clock, double s0, int count) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  double s = s0;
  for (int k = 0; k < count; ++k, s *= 0.5) out.push_back(clock.psi_inv(s));
  return out;
}

Vector generator_delta_quotient(const ConformableSemigroup& cs, const Vector& x, std::span<const double> t_seq) {
  require_size(cs.generator(), x, "generator_delta_quotient");
  std::vector<double> nodes;
  std::vector<Vector> quotients;
  double last = std::numeric_limits<double>::infinity();
  for (double t : t_seq) {
    if (!(t > 0.0) || !(t < last)) throw ConfigError("generator_delta_quotient: times must be positive and decreasing");
    last = t;
    const double s = cs.clock().psi(t);
    nodes.push_back(s);
    quotients.push_back((cs.evolve(t, x) - x) / s);
  }
  return extrapolate_quotients(nodes, std::move(quotients), "generator_delta_quotient");
}

Vector generator_classical_quotient(const ClassicalSemigroup& semigroup, const Vector& x,
                                    std::span<const double> s_seq) {
  require_size(semigroup.generator(), x, "generator_classical_quotient");
  std::vector<double> nodes;
  std::vector<Vector> quotients;
  double last = std::numeric_limits<double>::infinity();
  for (double s : s_seq) {
    if (!(s > 0.0) || !(s < last)) throw ConfigError("generator_classical_quotient: times must be positive and decreasing");
    last = s;
    nodes.push_back(s);
    quotients.push_back((semigroup.evolve(s, x) - x) / s);
  }
  return extrapolate_quotients(nodes, std::move(quotients), "generator_classical_quotient");
}

namespace {

// Dormand–Prince 5(4) tableau.
constexpr double kC2 = 1.0 / 5, kC3 = 3.0 / 10, kC4 = 4.0 / 5, kC5 = 8.0 / 9;
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247, kA64 = 49.0 / 176,
                 kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192, kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920, kE5 = -17253.0 / 339200,
                 kE6 = 22.0 / 525, kE7 = -1.0 / 40;

class DopriStepper {
 public:
  DopriStepper(const Matrix& a, double delta, OdeOptions opts) : a_(a), delta_(delta), opts_(opts) {}

  // Advances y from t to t_target; h carries the step-size guess across calls.
  void advance(double& t, Vector& y, double t_target, double& h) const {
    while (t < t_target) {
      const double remaining = t_target - t;
      bool final_step = false;
      if (h >= remaining) {
        h = remaining;
        final_step = true;
      }
      if (h < 1e-14 * std::max(1.0, std::abs(t))) {
        std::ostringstream msg;
        msg << "solve_conformable_ode: step size underflow at t=" << t;
        throw NumericalError(msg.str());
      }
      const Vector k1 = rhs(t, y);
      const Vector k2 = rhs(t + kC2 * h, y + h * (kA21 * k1));
      const Vector k3 = rhs(t + kC3 * h, y + h * (kA31 * k1 + kA32 * k2));
      const Vector k4 = rhs(t + kC4 * h, y + h * (kA41 * k1 + kA42 * k2 + kA43 * k3));
      const Vector k5 = rhs(t + kC5 * h, y + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
      const Vector k6 = rhs(t + h, y + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5));
      const Vector y_new = y + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
      const double t_new = final_step ? t_target : t + h;
      const Vector k7 = rhs(t_new, y_new);
      const Vector err = h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);

      double acc = 0.0;
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double sc = opts_.atol + opts_.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
        acc += std::norm(err[i]) / (sc * sc);
      }
      const double err_norm = std::sqrt(acc / static_cast<double>(y.size()));
      if (!std::isfinite(err_norm)) {
        h *= 0.2;
        continue;
      }
      const double factor = err_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
      if (err_norm <= 1.0) {
        t = t_new;
        y = y_new;
        if (!final_step) h *= factor;
      } else {
        h *= std::min(1.0, factor);
      }
    }
  }

 private:
  Vector rhs(double t, const Vector& y) const { return std::pow(t, delta_ - 1.0) * (a_ * y); }

  const Matrix& a_;
  double delta_;
  OdeOptions opts_;
};

}  // namespace

OrbitSample solve_conformable_ode(const GeneratorMatrix& g, Order order, const Vector& x0, double t_end,
                                  OdeOptions opts) {
  require_size(g, x0, "solve_conformable_ode");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw DomainError("solve_conformable_ode: requires t_end > 0");
  if (opts.output_points < 2) throw ConfigError("solve_conformable_ode: need at least 2 output points");
  const double delta = order.value();
  const Clock clock(order);
  const double t0 = std::min(1e-3, pow_nonneg(1e-3 * delta, 1.0 / delta));

  OrbitSample orbit;
  const int m = opts.output_points;
  const ClassicalSemigroup start(g);
  const DopriStepper stepper(g.entries(), delta, opts);

  double t = 0.0;
  Vector y = x0;
  bool started = false;
  double h = 0.1 * t0;
  for (int k = 0; k < m; ++k) {
    const double tk = k == m - 1 ? t_end : t_end * static_cast<double>(k) / static_cast<double>(m - 1);
    if (tk <= t0) {
      // Inside the start segment the exact propagator is the only option.
      orbit.times.push_back(tk);
      orbit.states.push_back(start.evolve(clock.psi(tk), x0));
    } else {
      if (!started) {
        t = t0;
        y = start.evolve(clock.psi(t0), x0);
        started = true;
      }
      stepper.advance(t, y, tk, h);
      orbit.times.push_back(tk);
      orbit.states.push_back(y);
    }
    orbit.norms.push_back(g.norm(orbit.states.back()));
  }
  return orbit;
}

double dissipativity_margin(const GeneratorMatrix& g) {
  const Matrix b = symmetrize_weights(g.entries(), g.ip_weights());
  const Matrix herm = 0.5 * (b + b.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("dissipativity_margin: eigensolver failed");
  return solver.eigenvalues().maxCoeff();
}

Vector random_vector(Eigen::Index n, SeededRng& rng) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = rng.uniform(-1.0, 1.0);
    const double im = rng.uniform(-1.0, 1.0);
    v[i] = {re, im};
  }
  return v;
}

CheckReport resolvent_bound_check(const GeneratorMatrix& g, double lambda, std::uint64_t seed, int random_vectors) {
  if (!(lambda > 0.0)) throw DomainError("resolvent_bound_check: requires lambda > 0");
  const Eigen::Index n = g.size();
  const Matrix shifted = lambda * Matrix::Identity(n, n) - g.entries();
  Eigen::FullPivLU<Matrix> lu(shifted);

  double worst = std::numeric_limits<double>::infinity();
  if (lu.isInvertible()) {
    const Matrix resolvent = lu.inverse();
    worst = lambda * g.operator_norm(resolvent);
    SeededRng rng(seed);
    for (int i = 0; i < random_vectors; ++i) {
      const Vector x = random_vector(n, rng);
      const double image = g.norm(shifted * x);
      const double ratio = image > 0.0 ? lambda * g.norm(x) / image : std::numeric_limits<double>::infinity();
      worst = std::max(worst, ratio);
    }
  }
  CheckReport report = make_report("resolvent_bound", worst, 1.0 + 1e-10);
  report.params["generator"] = g.label();
  report.params["lambda"] = format_param(lambda);
  report.params["n"] = std::to_string(n);
  report.seed = seed;
  return report;
}

CheckReport contraction_check(const ConformableSemigroup& cs, std::span<const double> t_grid) {
  double worst = 0.0;
  std::string times;
  for (double t : t_grid) {
    worst = std::max(worst, cs.generator().operator_norm(cs.propagator(t)));
    if (!times.empty()) times += ';';
    times += format_param(t);
  }
  CheckReport report = make_report("contraction", worst, 1.0 + 1e-10);
  report.params["generator"] = cs.generator().label();
  report.params["delta"] = format_param(cs.clock().delta());
  report.params["times"] = times;
  return report;
}

ContinuityProfile strong_continuity_profile(const ConformableSemigroup& cs, const Vector& x, int k_first, int k_last) {
  ContinuityProfile out;
  out.decreasing = true;
  for (int k = k_first; k <= k_last; ++k) {
    const double t = std::ldexp(1.0, -k);
    const double dist = cs.generator().norm(cs.evolve(t, x) - x);
    if (!out.distances.empty() && !(dist < out.distances.back())) out.decreasing = false;
    out.times.push_back(t);
    out.distances.push_back(dist);
    out.fitted_constant = std::max(out.fitted_constant, dist / cs.clock().psi(t));
  }
  return out;
}

GeneratorMatrix dirichlet_second_difference(int n) {
  if (n < 1) throw ConfigError("dirichlet_second_difference: n must be positive");
  const double h = 1.0 / (n + 1);
  const double inv_h2 = 1.0 / (h * h);
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = -2.0 * inv_h2;
    if (i > 0) a(i, i - 1) = inv_h2;
    if (i + 1 < n) a(i, i + 1) = inv_h2;
  }
  return GeneratorMatrix(std::move(a), RealVector::Constant(n, h), "dirichlet_second_difference");
}

}  // namespace conformable
