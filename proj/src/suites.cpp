#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

#include "conformable/calculus.hpp"
#include "conformable/drift_diffusion.hpp"
#include "conformable/dynamics.hpp"
#include "conformable/errors.hpp"
#include "conformable/harness.hpp"
#include "conformable/random.hpp"
#include "conformable/semigroup.hpp"
#include "conformable/transport.hpp"
#include "conformable/weighted_spaces.hpp"

namespace conformable {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Params = std::vector<std::pair<std::string, std::string>>;

class Collector {
 public:
  Collector(const RunConfig& config, std::string suite) : config_(config), suite_(std::move(suite)) {}

  // Times `body`, stamps id/params/seed and records the report.
  void run(const std::string& name, const Params& params, const std::function<CheckReport()>& body) {
    const auto start = std::chrono::steady_clock::now();
    CheckReport report;
    try {
      report = body();
    } catch (const std::exception& e) {
      report = make_report(name, kInf, 0.0);
      report.status = "error";
      report.params["error"] = e.what();
    }
    const auto stop = std::chrono::steady_clock::now();
    std::string id = suite_ + "." + name;
    if (!params.empty()) {
      id += "[";
      for (std::size_t k = 0; k < params.size(); ++k) id += (k ? "," : "") + params[k].first + "=" + params[k].second;
      id += "]";
    }
    report.check_id = id;
    for (const auto& [k, v] : params) report.params[k] = v;
    report.seed = config_.seed;
    report.wall_time = config_.timing ? std::chrono::duration<double>(stop - start).count() : 0.0;
    out_.push_back(std::move(report));
  }

  std::vector<CheckReport> take() { return std::move(out_); }
  const RunConfig& config() const { return config_; }

 private:
  const RunConfig& config_;
  std::string suite_;
  std::vector<CheckReport> out_;
};

std::string fp(double v) { return format_param(v); }

double rel(Complex got, Complex want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

double rel_vec(const Vector& got, const Vector& want) {
  return (got - want).norm() / std::max(want.norm(), 1e-300);
}

// ---------------------------------------------------------------- calculus

void calculus_suite(Collector& col) {
  const RunConfig& cfg = col.config();
  const std::pair<const char*, FunctionHandle> corpus[] = {
      {"one", functions::constant(1.0)}, {"t", functions::monomial(1)}, {"sin", functions::sine()}};
  for (double d : cfg.deltas) {
    const Order order(d);
    for (const auto& [name, f] : corpus) {
      col.run("fundamental_identity", {{"f", name}, {"delta", fp(d)}}, [&, f = f] {
        const FunctionHandle integral = conf_integral_handle(f, order);
        double worst = 0.0;
        for (int k = 1; k <= 20; ++k) {
          const double t = 0.05 * k;
          worst = std::max(worst, rel(conf_derivative_limit(integral, order, t), f(t)));
        }
        return make_report("", worst, cfg.tol.fundamental);
      });
    }
    col.run("limit_definition", {{"delta", fp(d)}}, [&] {
      double worst = 0.0;
      for (const auto& f : {functions::monomial(2), functions::sine(), functions::exp_scaled(0.5)}) {
        for (double t : {0.25, 0.5, 1.0, 2.0, 3.0}) {
          worst = std::max(worst, rel(conf_derivative_limit(f, order, t), conf_derivative(f, order, t)));
        }
      }
      return make_report("", worst, cfg.tol.limit);
    });
    col.run("power_rule", {{"delta", fp(d)}}, [&] {
      double worst = 0.0;
      for (int m = 1; m <= 3; ++m) {
        for (double t : {0.1, 0.5, 1.0, 2.0}) {
          worst = std::max(worst, rel(conf_derivative(functions::monomial(m), order, t), m * std::pow(t, m - d)));
        }
      }
      return make_report("", worst, 1e-12);
    });
  }
}

// ---------------------------------------------------------------- spaces

std::vector<std::pair<const char*, FunctionHandle>> space_corpus() {
  return {{"one", functions::constant(1.0)},
          {"t", functions::monomial(1)},
          {"t2", functions::monomial(2)},
          {"sin", functions::sine()},
          {"exp_neg", functions::exp_scaled(-1.0)}};
}

void spaces_suite(Collector& col) {
  const RunConfig& cfg = col.config();
  for (double d : cfg.deltas) {
    const Order order(d);
    for (double p : {1.0, 2.0}) {
      col.run("isometry", {{"delta", fp(d)}, {"p", fp(p)}}, [&] {
        const TimeIsometry iso(order, 1.0);
        QuadratureRule plain;
        plain.grading = clock_grading(order, plain.points);
        double worst = 0.0;
        for (const auto& [name, f] : space_corpus()) {
          const double lhs = lp_delta_norm(f, SpaceSpec(order, p, 1.0));
          const double rhs = lp_norm_plain(iso.apply(f), 0.0, iso.target_horizon(), p, plain);
          worst = std::max(worst, std::abs(lhs - rhs) / lhs);
        }
        return make_report("", worst, cfg.tol.isometry);
      });
    }
    col.run("spatial_unitarity", {{"delta", fp(d)}}, [&] {
      const SpatialUnitary u(order);
      QuadratureRule plain;
      plain.grading = clock_grading(order, plain.points);
      std::vector<std::pair<const char*, FunctionHandle>> corpus = space_corpus();
      corpus.emplace_back("x_pow_delta", functions::power(d));
      double worst = 0.0;
      for (const auto& [name, f] : corpus) {
        const double lhs = std::pow(lp_delta_norm(f, SpaceSpec(order, 2.0, 1.0)), 2);
        const double rhs = std::pow(lp_norm_plain(u.apply(f, Direction::kForward), 0.0, 1.0, 2.0, plain), 2);
        worst = std::max(worst, std::abs(lhs - rhs) / lhs);
      }
      const double worked = std::pow(lp_delta_norm(functions::power(d), SpaceSpec(order, 2.0, 1.0)), 2);
      worst = std::max(worst, std::abs(worked - 1.0 / (3.0 * d)) * 3.0 * d);
      return make_report("", worst, cfg.tol.unitarity);
    });
    col.run("cauchy_schwarz", {{"delta", fp(d)}}, [&] {
      SeededRng rng(cfg.seed);
      const SpaceSpec spec(order, 2.0, 1.0);
      double worst = -kInf;
      for (int trial = 0; trial < 20; ++trial) {
        std::array<double, 4> cf{};
        std::array<double, 4> cg{};
        for (auto& v : cf) v = rng.uniform(-1.0, 1.0);
        for (auto& v : cg) v = rng.uniform(-1.0, 1.0);
        const FunctionHandle f([cf](double t) -> Complex { return cf[0] + t * (cf[1] + t * (cf[2] + t * cf[3])); });
        const FunctionHandle g([cg](double t) -> Complex { return cg[0] + t * (cg[1] + t * (cg[2] + t * cg[3])); });
        const double lhs = std::abs(inner_product_2delta(f, g, spec));
        const double rhs = lp_delta_norm(f, spec) * lp_delta_norm(g, spec);
        worst = std::max(worst, lhs / rhs - 1.0);
      }
      return make_report("", std::max(worst, 0.0), 1e-12);
    });
  }
}

// ---------------------------------------------------------------- clock

void clock_suite(Collector& col) {
  const RunConfig& cfg = col.config();
  std::vector<double> deltas = cfg.semigroup_deltas;
  for (double d : deltas) {
    const Clock clock(d);
    col.run("bijection", {{"delta", fp(d)}}, [&] {
      double worst = 0.0;
      for (int k = 0; k < 1000; ++k) {
        const double t = 10.0 * k / 999.0;
        worst = std::max(worst, std::abs(clock.psi_inv(clock.psi(t)) - t) / (1.0 + t));
      }
      return make_report("", worst, cfg.tol.clock);
    });
    col.run("monotonicity", {{"delta", fp(d)}}, [&] {
      double violations = 0.0;
      double previous = clock.psi(0.0);
      for (int k = 1; k <= 10000; ++k) {
        const double current = clock.psi(1e-3 * k);
        if (!(current > previous)) violations += 1.0;
        previous = current;
      }
      return make_report("", violations, 0.0);
    });
    col.run("additive_law", {{"delta", fp(d)}}, [&] {
      SeededRng rng(cfg.seed);
      double worst = 0.0;
      for (int k = 0; k < 200; ++k) {
        const double t1 = rng.uniform(0.0, 10.0);
        const double t2 = rng.uniform(0.0, 10.0);
        const double joint = std::pow(std::pow(t1, d) + std::pow(t2, d), 1.0 / d);
        const double want = clock.psi(t1) + clock.psi(t2);
        worst = std::max(worst, std::abs(clock.psi(joint) - want) / want);
      }
      return make_report("", worst, cfg.tol.clock);
    });
  }
}

// ---------------------------------------------------------------- semigroup

Matrix nilpotent() {
  Matrix b = Matrix::Zero(2, 2);
  b(0, 1) = 1.0;
  return b;
}

Matrix non_normal_4x4() {
  Matrix a(4, 4);
  a << -1.0, 2.0, 0.0, 0.0,  //
      0.0, -1.0, 3.0, 0.0,   //
      0.0, 0.0, -0.5, 1.0,   //
      0.2, 0.0, 0.0, -2.0;
  return a;
}

std::vector<GeneratorMatrix> law_generators() {
  Matrix d1 = Matrix::Zero(2, 2);
  d1(0, 0) = -1.0;
  d1(1, 1) = -2.0;
  Matrix d2 = Matrix::Zero(3, 3);
  d2(0, 0) = Complex(-0.5, 1.0);
  d2(1, 1) = -0.1;
  d2(2, 2) = Complex(0.0, -2.0);
  return {GeneratorMatrix(nilpotent(), "nilpotent"), GeneratorMatrix(d1, "diag_real"),
          GeneratorMatrix(d2, "diag_complex")};
}

std::vector<GeneratorMatrix> coincidence_generators() {
  Matrix d1 = Matrix::Zero(2, 2);
  d1(0, 0) = -1.0;
  d1(1, 1) = -2.0;
  return {GeneratorMatrix(d1, "diag_real"), GeneratorMatrix(nilpotent(), "nilpotent"),
          GeneratorMatrix(non_normal_4x4(), "non_normal")};
}

void semigroup_suite(Collector& col) {
  const RunConfig& cfg = col.config();
  for (const auto& g : law_generators()) {
    for (double d : cfg.semigroup_deltas) {
      col.run("delta_law", {{"generator", g.label()}, {"delta", fp(d)}}, [&] {
        const ConformableSemigroup cs(g, Order(d));
        SeededRng rng(cfg.seed);
        const Vector x = random_vector(g.size(), rng);
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
          const double r = rng.uniform(0.0, 2.0);
          const double q = rng.uniform(0.0, 2.0);
          worst = std::max(worst, delta_law_residual(cs, r, q, x) / g.norm(x));
        }
        return make_report("", worst, cfg.tol.law);
      });
    }
  }
  for (const auto& g : coincidence_generators()) {
    for (double d : cfg.deltas) {
      col.run("generator_coincidence", {{"generator", g.label()}, {"delta", fp(d)}}, [&] {
        const ConformableSemigroup cs(g, Order(d));
        SeededRng rng(cfg.seed);
        const Vector x = random_vector(g.size(), rng);
        const Vector ax = g.entries() * x;
        const auto t_seq = halving_clock_times(cs.clock(), 0.05, 8);
        std::vector<double> s_seq;
        for (int k = 0; k < 8; ++k) s_seq.push_back(std::ldexp(0.05, -k));
        const Vector via_delta = generator_delta_quotient(cs, x, t_seq);
        const Vector via_classical = generator_classical_quotient(cs.base(), x, s_seq);
        const double worst = std::max({rel_vec(via_delta, ax), rel_vec(via_classical, ax), rel_vec(via_delta, via_classical)});
        return make_report("", worst, cfg.tol.generator);
      });
    }
  }
  for (double d : {0.4, 0.7}) {
    col.run("clock_correspondence", {{"generator", "non_normal"}, {"delta", fp(d)}}, [&] {
      const GeneratorMatrix g(non_normal_4x4(), "non_normal");
      const ConformableSemigroup cs(g, Order(d));
      Vector x0(4);
      x0 << 1.0, -0.5, 0.25, 2.0;
      const OrbitSample orbit = solve_conformable_ode(g, Order(d), x0, 2.0);
      double worst = 0.0;
      for (std::size_t k = 0; k < orbit.times.size(); ++k) {
        worst = std::max(worst, rel_vec(orbit.states[k], cs.evolve(orbit.times[k], x0)));
      }
      return make_report("", worst, cfg.tol.ode);
    });
  }
  const GeneratorMatrix lap = dirichlet_second_difference(cfg.operator_n);
  col.run("dissipativity", {{"generator", lap.label()}, {"n", std::to_string(cfg.operator_n)}}, [&] {
    const double margin = dissipativity_margin(lap);
    CheckReport r = make_report("", std::max(margin, 0.0), cfg.tol.dissipativity);
    r.params["margin"] = fp(margin);
    return r;
  });
  for (double lambda : {0.1, 0.5, 1.0, 2.0}) {
    col.run("resolvent_bound", {{"n", std::to_string(cfg.operator_n)}, {"lambda", fp(lambda)}}, [&] {
      CheckReport r = resolvent_bound_check(lap, lambda, cfg.seed);
      r.tolerance = 1.0 + cfg.tol.resolvent;
      r.passed = r.residual <= r.tolerance;
      r.status = r.passed ? "pass" : "fail";
      return r;
    });
  }
  for (double d : {0.5, 1.0}) {
    col.run("contraction", {{"n", std::to_string(cfg.operator_n)}, {"delta", fp(d)}}, [&] {
      const double times[] = {0.1, 1.0, 5.0};
      CheckReport r = contraction_check(ConformableSemigroup(lap, Order(d)), times);
      r.tolerance = 1.0 + cfg.tol.contraction;
      r.passed = r.residual <= r.tolerance;
      r.status = r.passed ? "pass" : "fail";
      return r;
    });
  }
  for (const auto& g : {law_generators()[1], law_generators()[2]}) {
    for (double d : cfg.deltas) {
      col.run("strong_continuity", {{"generator", g.label()}, {"delta", fp(d)}}, [&] {
        SeededRng rng(cfg.seed);
        const Vector x = g.entries() * random_vector(g.size(), rng);
        const ContinuityProfile prof = strong_continuity_profile(ConformableSemigroup(g, Order(d)), x);
        const double ax = g.norm(g.entries() * x);
        const double deviation = ax > 0.0 ? std::abs(prof.fitted_constant / ax - 1.0) : prof.fitted_constant;
        CheckReport r = make_report("", prof.decreasing ? deviation : kInf, cfg.tol.continuity);
        r.params["fitted_constant"] = fp(prof.fitted_constant);
        return r;
      });
    }
  }
  col.run("orbit_identity", {}, [&] {
    const GeneratorMatrix g(non_normal_4x4(), "non_normal");
    const ConformableSemigroup cs(g, Order(0.5));
    SeededRng rng(cfg.seed);
    const Vector x = random_vector(4, rng);
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      const double t = rng.uniform(0.0, 3.0);
      worst = std::max(worst, (cs.evolve(t, x) - cs.base().evolve(cs.clock().psi(t), x)).norm());
    }
    return make_report("", worst, 0.0);
  });
}

// ---------------------------------------------------------------- drift-diffusion

void drift_diffusion_suite(Collector& col) {
  const RunConfig& cfg = col.config();
  const DriftDiffusionParams p(cfg.a, cfg.b, cfg.c, Order(cfg.delta));
  const Params base{{"a", fp(cfg.a)}, {"b", fp(cfg.b)}, {"c", fp(cfg.c)}, {"delta", fp(cfg.delta)}};

  col.run("parameter_transfer", {}, [&] {
    SeededRng rng(cfg.seed);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const DriftDiffusionParams q(rng.uniform(0.1, 5.0), rng.uniform(0.1, 5.0), rng.uniform(0.1, 5.0),
                                   Order(rng.uniform(0.05, 1.0)));
      const double ratio = q.b * q.b / (2.0 * q.a);
      worst = std::max(worst, std::abs(parameter_transfer(q).ratio() - ratio) / ratio);
    }
    return make_report("", worst, cfg.tol.transfer);
  });
  col.run("conjugacy_convergence", base, [&] {
    return conjugacy_convergence_check(p, cfg.n_list, cfg.tol.conjugacy_order);
  });
  col.run("conjugacy_classical_limit", {{"a", fp(cfg.a)}, {"b", fp(cfg.b)}, {"c", fp(cfg.c)}}, [&] {
    return conjugacy_convergence_check(DriftDiffusionParams(cfg.a, cfg.b, cfg.c, Order(1.0)), cfg.n_list,
                                       cfg.tol.conjugacy_order);
  });
  const EigenfunctionFamily fam(p);
  for (Complex lambda : {Complex(0.0), Complex(0.3), Complex(0.0, 1.0), Complex(0.2, 0.5)}) {
    col.run("eigen_residual", {{"lambda", fp(lambda.real()) + (lambda.imag() >= 0 ? "+" : "") + fp(lambda.imag()) + "i"}},
            [&] {
              const EigenResidual e = eigen_residual(fam, lambda, cfg.eigen_n);
              const double bound = 10.0 * e.h * e.h * e.fourth_derivative_scale;
              CheckReport r = make_report("", e.residual / bound, 1.0);
              r.params["residual"] = fp(e.residual);
              r.params["bound"] = fp(bound);
              return r;
            });
  }
  col.run("mild_solution_correspondence", base, [&] {
    CheckReport r = mild_solution_correspondence(p, cfg.correspondence_n).report;
    r.tolerance = cfg.tol.correspondence;
    r.passed = r.residual <= r.tolerance;
    r.status = r.passed ? "pass" : "fail";
    return r;
  });
  for (int k : {1, 2}) {
    col.run("derivative_identity", {{"order", std::to_string(k)}, {"delta", fp(cfg.delta)}}, [&] {
      double samples[20];
      for (int i = 0; i < 20; ++i) samples[i] = 0.05 * (i + 0.5);
      double worst = 0.0;
      for (const auto& u : {functions::sine(), functions::exp_scaled(-1.0), functions::monomial(3)}) {
        worst = std::max(worst, derivative_identity_residual(u, Order(cfg.delta), k, samples));
      }
      return make_report("", worst, 1e-8);
    });
  }
}

// ---------------------------------------------------------------- transport

void transport_suite(Collector& col) {
  const RunConfig& cfg = col.config();
  for (double alpha : cfg.alphas) {
    const Order order(alpha);
    const TransportModel model(order, WeightSpec(order, weights::by_name(cfg.weight)));
    const std::pair<const char*, FunctionHandle> fs[] = {
        {"sin", functions::sine()}, {"exp_neg", functions::exp_scaled(-1.0)}, {"t", functions::monomial(1)}};
    col.run("conjugacy", {{"alpha", fp(alpha)}}, [&] {
      SeededRng rng(cfg.seed);
      double worst = 0.0;
      for (int k = 0; k < 100; ++k) {
        const double xi = rng.uniform(0.0, 10.0);
        const double t = rng.uniform(0.0, 5.0);
        for (const auto& [name, f] : fs) {
          const double sample[] = {xi};
          const double scale = 1.0 + std::max(std::abs(f(model.psi_inv(xi))), std::abs(f(model.psi_inv(xi + t))));
          worst = std::max(worst, transport_conjugacy_residual(model, f, t, sample) / scale);
        }
      }
      return make_report("", worst, cfg.tol.transport);
    });
    col.run("semigroup_law", {{"alpha", fp(alpha)}}, [&] {
      SeededRng rng(cfg.seed);
      double worst = 0.0;
      const FunctionHandle f = functions::sine();
      for (int k = 0; k < 100; ++k) {
        const double x = rng.uniform(0.0, 10.0);
        const double t = rng.uniform(0.0, 3.0);
        const double r = rng.uniform(0.0, 3.0);
        const Complex twice = apply_S_alpha(model, apply_S_alpha(model, f, r), t)(x);
        const Complex once = apply_S_alpha(model, f, t + r)(x);
        worst = std::max(worst, std::abs(twice - once));
      }
      return make_report("", worst, cfg.tol.transport);
    });
    col.run("pde", {{"alpha", fp(alpha)}}, [&] {
      std::vector<double> xs;
      for (int k = 0; k < 36; ++k) xs.push_back(0.5 + 0.1 * k);
      double worst = 0.0;
      for (const auto& [name, f] : fs) {
        const FunctionHandle u = apply_S_alpha(model, f, 1.0);
        double fprime = 0.0;
        for (double x : xs) fprime = std::max(fprime, std::abs(f.derivative(model.psi_inv(model.psi(x) + 1.0))));
        worst = std::max(worst, transport_pde_residual(model, f, 1.0, xs) / (1.0 + fprime));
      }
      return make_report("", worst, cfg.tol.pde);
    });
    col.run("weight_criterion", {{"alpha", fp(alpha)}, {"weight", cfg.weight}}, [&] {
      const double ends[] = {1.0, 2.0, 4.0, 8.0};
      CheckReport r = weight_criterion_probe(model, ends);
      // Informational: the probe is a heuristic, not a theorem.
      r.status = r.passed ? "criterion_satisfied" : "criterion_not_satisfied";
      const double res = r.residual;
      r.residual = 0.0;
      r.tolerance = 0.0;
      r.passed = true;
      r.params["probe_residual"] = fp(res);
      return r;
    });
  }
}

// ---------------------------------------------------------------- dynamics

void dynamics_suite(Collector& col) {
  const RunConfig& cfg = col.config();
  const DriftDiffusionParams p(cfg.a, cfg.b, cfg.c, Order(cfg.delta));
  const Params base{{"a", fp(cfg.a)}, {"b", fp(cfg.b)}, {"c", fp(cfg.c)}, {"delta", fp(cfg.delta)}};

  col.run("dsw_condition", base, [&] {
    const DswCondition cond = dsw_condition_check(p);
    CheckReport r = make_report("", 0.0, 0.0);
    r.status = cond.holds ? "condition_met" : "condition_not_met";
    r.params["ratio"] = fp(cond.ratio);
    r.params["lower_margin"] = fp(cond.lower_margin);
    r.params["upper_margin"] = fp(cond.upper_margin);
    return r;
  });

  DswProbeOptions opts;
  opts.analyticity_tol = cfg.tol.analyticity;
  opts.gram_threshold = cfg.tol.gram;
  const DSWReport dsw = dsw_hypotheses_probe(p, LambdaRectangle{}, cfg.eigen_n, opts);
  col.run("dsw_point_spectrum", base, [&] {
    double worst = 0.0;
    for (const auto& s : dsw.v_samples) worst = std::max(worst, s.residual / s.bound);
    CheckReport r = make_report("", worst, 1.0);
    r.params["samples"] = std::to_string(dsw.v_samples.size());
    r.params["imag_axis_samples"] = std::to_string(dsw.imag_axis_samples.size());
    return r;
  });
  col.run("dsw_analyticity", base, [&] {
    double worst = dsw.radius_dependence;
    for (double v : dsw.analyticity_residuals) worst = std::max(worst, v);
    return make_report("", worst, cfg.tol.analyticity);
  });
  col.run("dsw_separation", base, [&] {
    CheckReport r = make_report("", cfg.tol.gram / dsw.separation_gram, 1.0);
    r.params["gram_determinant"] = fp(dsw.separation_gram);
    return r;
  });

  const EigenfunctionFamily fam(p);
  col.run("clock_invariance", {{"delta", fp(cfg.delta)}}, [&] {
    const GeneratorMatrix lap = dirichlet_second_difference(32);
    SeededRng rng(cfg.seed);
    const Vector x = random_vector(lap.size(), rng);
    const double s_list[] = {1e-3, 0.01, 0.1, 0.5, 1.0};
    CheckReport r = clock_invariance_check(ConformableSemigroup(lap, Order(cfg.delta)), x, s_list);
    r.tolerance = cfg.tol.clock;
    r.passed = r.residual <= r.tolerance;
    r.status = r.passed ? "pass" : "fail";
    return r;
  });
  for (Complex lambda : {Complex(-1.0), Complex(-0.5, 3.0)}) {
    col.run("x0_decay", {{"lambda", fp(lambda.real()) + "+" + fp(lambda.imag()) + "i"}}, [&] {
      const double ts[] = {0.0, 0.5, 1.0, std::log(10.0), 5.0, 10.0};
      const auto records = x0_probe(fam, lambda, ts);
      double worst = 0.0;
      bool ok = true;
      for (const auto& rec : records) {
        worst = std::max(worst, rec.error);
        ok = ok && rec.passed;
      }
      return make_report("", ok ? worst : kInf, cfg.tol.decay);
    });
  }
  for (Complex lambda : {Complex(1.0), Complex(2.0), Complex(0.5, 2.0)}) {
    col.run("xinf_witness", {{"lambda", fp(lambda.real()) + "+" + fp(lambda.imag()) + "i"}, {"eps", "0.001"}}, [&] {
      const XinfRecord rec = xinf_probe(fam, lambda, 1e-3);
      CheckReport r = make_report("", rec.seed_norm < rec.eps ? rec.terminal_error : kInf, cfg.tol.xinf);
      r.params["t_star"] = fp(rec.t_star);
      r.params["seed_norm"] = fp(rec.seed_norm);
      return r;
    });
  }
  for (double omega : {2.0 * std::numbers::pi, 1.0, 3.5}) {
    col.run("periodic_return", {{"omega", fp(omega)}, {"delta", fp(cfg.delta)}}, [&] {
      const PeriodicRecord rec = periodic_orbit_check(fam, omega, Order(cfg.delta));
      const double worst = std::max({rec.return_error, rec.half_period_error, rec.conformable_return_error});
      CheckReport r = make_report("", rec.passed ? worst : kInf, cfg.tol.periodic);
      r.params["period"] = fp(rec.period);
      r.params["conformable_return_time"] = fp(rec.conformable_return_time);
      return r;
    });
  }
}

}  // namespace

std::vector<CheckReport> run_suite(const RunConfig& config) {
  std::vector<CheckReport> all;
  const std::pair<const char*, void (*)(Collector&)> table[] = {
      {"clock", clock_suite},          {"calculus", calculus_suite},   {"spaces", spaces_suite},
      {"semigroup", semigroup_suite},  {"drift-diffusion", drift_diffusion_suite},
      {"transport", transport_suite},  {"dynamics", dynamics_suite},
  };
  bool matched = false;
  for (const auto& [name, fn] : table) {
    if (config.suite != "all" && config.suite != name) continue;
    matched = true;
    Collector col(config, name);
    fn(col);
    auto part = col.take();
    all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  if (!matched) throw ConfigError("unknown suite '" + config.suite + "'");
  std::set<std::string> ids;
  for (const auto& r : all) {
    if (!ids.insert(r.check_id).second) throw std::logic_error("duplicate check id " + r.check_id);
  }
  return all;
}

}  // namespace conformable
