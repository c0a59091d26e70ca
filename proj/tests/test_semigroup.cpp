#include <doctest.h>

#include <cmath>
#include <numbers>

#include "conformable/errors.hpp"
#include "conformable/function.hpp"
#include "conformable/semigroup.hpp"

using namespace conformable;

namespace {

Matrix taylor_exp(const Matrix& a) {
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  Matrix total = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * a / static_cast<double>(k);
    total += term;
  }
  return total;
}

Matrix diag(std::initializer_list<Complex> values) {
  Matrix m = Matrix::Zero(values.size(), values.size());
  int i = 0;
  for (Complex v : values) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

Matrix nilpotent() {
  Matrix b = Matrix::Zero(2, 2);
  b(0, 1) = 1.0;
  return b;
}

Vector vec(std::initializer_list<Complex> values) {
  Vector v(values.size());
  int i = 0;
  for (Complex x : values) v(i++) = x;
  return v;
}

double rel(const Vector& got, const Vector& want) { return (got - want).norm() / std::max(1.0, want.norm()); }

}  // namespace

TEST_CASE("expm matches the Taylor series for small matrices") {
  SeededRng rng(5);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      Matrix a(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
      }
      a *= 2.0 / a.norm();
      const Matrix want = taylor_exp(a);
      CHECK((expm(a) - want).norm() <= 1e-12 * want.norm());
    }
  }
}

TEST_CASE("expm at large norm matches an eigen-decomposition") {
  Matrix p(3, 3);
  p << 1.0, 2.0, 0.0, 0.0, 1.0, -1.0, 1.0, 0.0, 3.0;
  const Matrix d = diag({-30.0, Complex(-5.0, 12.0), 2.5});
  Matrix ed = Matrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i) ed(i, i) = std::exp(d(i, i));
  const Matrix want = p * ed * p.inverse();
  CHECK((expm(p * d * p.inverse()) - want).norm() <= 1e-11 * want.norm());
}

TEST_CASE("expm rejects non-finite input") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = std::nan("");
  CHECK_THROWS_AS(expm(a), NumericalError);
}

TEST_CASE("evolve_classical worked values") {
  const Vector x = vec({1.0, Complex(0.0, 2.0)});
  CHECK(evolve_classical(GeneratorMatrix(Matrix::Zero(2, 2), "zero"), 5.0, x) == x);
  const Vector y = evolve_classical(GeneratorMatrix(diag({-1.0}), "d"), 1.0, vec({1.0}));
  CHECK(std::abs(y(0) - std::exp(-1.0)) <= 1e-15);
  const Vector z = evolve_classical(GeneratorMatrix(nilpotent(), "nil"), 3.0, vec({0.0, 1.0}));
  CHECK(std::abs(z(0) - 3.0) <= 1e-14);
  CHECK(std::abs(z(1) - 1.0) <= 1e-14);
  CHECK_THROWS_AS(ClassicalSemigroup(GeneratorMatrix(diag({-1.0}), "d")).propagator(-1.0), DomainError);
}

TEST_CASE("evolve_conformable worked values") {
  const GeneratorMatrix g(diag({-1.0}), "d");
  const Vector x = vec({2.0});
  CHECK(evolve_conformable(ConformableSemigroup(g, Order(0.3)), 0.0, x) == x);
  CHECK(std::abs(evolve_conformable(ConformableSemigroup(g, Order(0.5)), 4.0, x)(0) - 2.0 * std::exp(-4.0)) <= 1e-15);
  const GeneratorMatrix h(nilpotent(), "nil");
  const Vector v = vec({0.3, -1.0});
  CHECK(evolve_conformable(ConformableSemigroup(h, Order(1.0)), 1.7, v) == evolve_classical(h, 1.7, v));
}

TEST_CASE("classical semigroup property") {
  Matrix a(3, 3);
  a << -1.0, 2.0, 0.0, 0.0, -0.5, 1.0, 0.3, 0.0, -2.0;
  const ClassicalSemigroup sg(GeneratorMatrix(a, "a"));
  const Vector x = vec({1.0, -2.0, 0.5});
  for (double s : {0.1, 0.7, 2.0}) {
    for (double r : {0.0, 0.4, 1.3}) {
      CHECK(rel(sg.evolve(s + r, x), sg.evolve(s, sg.evolve(r, x))) <= 1e-11);
    }
  }
}

TEST_CASE("δ-law worked values") {
  const ConformableSemigroup nil(GeneratorMatrix(nilpotent(), "nil"), Order(0.5));
  const Vector x = vec({1.0, 1.0});
  for (auto [r, q] : {std::pair{0.3, 0.9}, std::pair{1.5, 0.2}}) CHECK(delta_law_residual(nil, r, q, x) <= 1e-13);
  // The nilpotent orbit is S(t) = I + 2√t B.
  const Matrix closed = Matrix::Identity(2, 2) + 2.0 * std::sqrt(2.25) * nilpotent();
  CHECK((nil.propagator(2.25) - closed).norm() <= 1e-14);
  const ConformableSemigroup dec(GeneratorMatrix(diag({-1.0, -2.0}), "d"), Order(0.7));
  CHECK(delta_law_residual(dec, 0.0, 1.3, x) <= 1e-13);
  CHECK(delta_law_residual(dec, 0.8, 0.0, x) <= 1e-13);
  CHECK(delta_law_residual(dec, 1.0, 1.0, x) <= 1e-11);
}

TEST_CASE("δ-law holds on random pairs") {
  SeededRng rng(99);
  const GeneratorMatrix gens[] = {GeneratorMatrix(nilpotent(), "nil"), GeneratorMatrix(diag({-1.0, -2.0}), "d1"),
                                  GeneratorMatrix(diag({Complex(-0.5, 1.0), -0.1, Complex(0.0, -2.0)}), "d2")};
  for (const auto& g : gens) {
    for (double d : {0.3, 0.5, 0.7, 1.0}) {
      const ConformableSemigroup cs(g, Order(d));
      const Vector x = random_vector(g.size(), rng);
      for (int k = 0; k < 50; ++k) {
        const double r = rng.uniform(0.0, 2.0);
        const double q = rng.uniform(0.0, 2.0);
        CHECK(delta_law_residual(cs, r, q, x) <= 1e-11 * g.norm(x));
      }
    }
  }
}

TEST_CASE("generator quotient worked values") {
  const ConformableSemigroup dec(GeneratorMatrix(diag({-1.0}), "d"), Order(0.5));
  const auto t_seq = halving_clock_times(dec.clock(), 0.05, 8);
  CHECK(std::abs(generator_delta_quotient(dec, vec({1.0}), t_seq)(0) + 1.0) <= 1e-6);

  const ConformableSemigroup zero(GeneratorMatrix(Matrix::Zero(2, 2), "zero"), Order(0.5));
  const Vector q0 = generator_delta_quotient(zero, vec({1.0, 2.0}), t_seq);
  CHECK(q0.norm() == 0.0);

  const ConformableSemigroup nil(GeneratorMatrix(nilpotent(), "nil"), Order(0.5));
  const Vector qn = generator_delta_quotient(nil, vec({0.0, 1.0}), t_seq);
  CHECK(rel(qn, vec({1.0, 0.0})) <= 1e-6);
}

TEST_CASE("generator quotient needs a decreasing sequence of four times") {
  const ConformableSemigroup dec(GeneratorMatrix(diag({-1.0}), "d"), Order(0.5));
  const double short_seq[] = {0.1, 0.05, 0.025};
  CHECK_THROWS(generator_delta_quotient(dec, vec({1.0}), short_seq));
  const double rising[] = {0.01, 0.02, 0.04, 0.08};
  CHECK_THROWS(generator_delta_quotient(dec, vec({1.0}), rising));
}

TEST_CASE("δ-quotient and classical quotient agree with Ax") {
  Matrix a(4, 4);
  a << -1.0, 2.0, 0.0, 0.0, 0.0, -1.0, 3.0, 0.0, 0.0, 0.0, -0.5, 1.0, 0.2, 0.0, 0.0, -2.0;
  const GeneratorMatrix g(a, "non_normal");
  SeededRng rng(1);
  const Vector x = random_vector(4, rng);
  for (double d : {0.3, 0.5, 0.9}) {
    const ConformableSemigroup cs(g, Order(d));
    std::vector<double> s_seq;
    for (int k = 0; k < 8; ++k) s_seq.push_back(std::ldexp(0.05, -k));
    const Vector via_delta = generator_delta_quotient(cs, x, halving_clock_times(cs.clock(), 0.05, 8));
    const Vector via_classical = generator_classical_quotient(cs.base(), x, s_seq);
    CHECK(rel(via_delta, a * x) <= 1e-6);
    CHECK(rel(via_classical, a * x) <= 1e-6);
  }
}

TEST_CASE("ODE oracle worked values") {
  SUBCASE("classical order reduces to x' = Ax") {
    Matrix a(2, 2);
    a << 0.0, 1.0, -4.0, -0.2;
    const GeneratorMatrix g(a, "osc");
    const Vector x0 = vec({1.0, 0.0});
    const OrbitSample orbit = solve_conformable_ode(g, Order(1.0), x0, 2.0);
    for (std::size_t k = 0; k < orbit.times.size(); ++k) {
      CHECK(rel(orbit.states[k], expm(orbit.times[k] * a) * x0) <= 1e-8);
    }
  }
  SUBCASE("scalar decay at δ = 0.4") {
    const GeneratorMatrix g(diag({-1.0}), "d");
    const Clock clock(0.4);
    const OrbitSample orbit = solve_conformable_ode(g, Order(0.4), vec({1.0}), 2.0);
    CHECK(orbit.times.size() == 21);
    CHECK(orbit.times.back() == 2.0);
    for (std::size_t k = 0; k < orbit.times.size(); ++k) {
      CHECK(std::abs(orbit.states[k](0) - std::exp(-clock.psi(orbit.times[k]))) <= 1e-6);
    }
  }
  SUBCASE("zero generator keeps the orbit constant") {
    const Vector x0 = vec({1.5, Complex(0.0, -1.0)});
    const OrbitSample orbit = solve_conformable_ode(GeneratorMatrix(Matrix::Zero(2, 2), "zero"), Order(0.3), x0, 2.0);
    for (const auto& state : orbit.states) CHECK(state == x0);
  }
}

TEST_CASE("ODE oracle agrees with the clock-composed semigroup") {
  Matrix a(4, 4);
  a << -1.0, 2.0, 0.0, 0.0, 0.0, -1.0, 3.0, 0.0, 0.0, 0.0, -0.5, 1.0, 0.2, 0.0, 0.0, -2.0;
  const GeneratorMatrix g(a, "non_normal");
  const Vector x0 = vec({1.0, -0.5, 0.25, 2.0});
  for (double d : {0.4, 0.7}) {
    const ConformableSemigroup cs(g, Order(d));
    const OrbitSample orbit = solve_conformable_ode(g, Order(d), x0, 2.0);
    for (std::size_t k = 0; k < orbit.times.size(); ++k) {
      CHECK(rel(orbit.states[k], cs.evolve(orbit.times[k], x0)) <= 1e-6);
      CHECK(orbit.norms[k] == doctest::Approx(g.norm(orbit.states[k])));
    }
  }
}

TEST_CASE("ODE oracle fails loudly on overflow") {
  const GeneratorMatrix g(diag({1e200}), "huge");
  CHECK_THROWS_AS(solve_conformable_ode(g, Order(0.5), vec({1.0}), 1.0), NumericalError);
  CHECK_THROWS_AS(solve_conformable_ode(g, Order(0.5), vec({1.0}), 0.0), DomainError);
}

TEST_CASE("dissipativity margin worked values") {
  CHECK(dissipativity_margin(GeneratorMatrix(diag({-1.0, -2.0}), "d")) == doctest::Approx(-1.0).epsilon(1e-14));
  Matrix skew(3, 3);
  skew << 0.0, 1.0, -2.0, -1.0, 0.0, 0.5, 2.0, -0.5, 0.0;
  CHECK(std::abs(dissipativity_margin(GeneratorMatrix(skew, "skew"))) <= 1e-12);
  const GeneratorMatrix lap = dirichlet_second_difference(7);
  const double h = 1.0 / 8.0;
  const double top = -4.0 / (h * h) * std::pow(std::sin(std::numbers::pi * h / 2.0), 2);
  CHECK(dissipativity_margin(lap) == doctest::Approx(top).epsilon(1e-12));
  CHECK(top < 0.0);
}

TEST_CASE("second-difference generator layout") {
  const GeneratorMatrix lap = dirichlet_second_difference(7);
  const double h = 1.0 / 8.0;
  CHECK(lap.size() == 7);
  CHECK(lap.entries()(3, 3).real() == doctest::Approx(-2.0 / (h * h)));
  CHECK(lap.entries()(3, 4).real() == doctest::Approx(1.0 / (h * h)));
  CHECK(lap.entries()(0, 6) == Complex(0.0));
  CHECK(lap.ip_weights()(2) == h);
}

TEST_CASE("resolvent bound worked values") {
  const CheckReport scalar = resolvent_bound_check(GeneratorMatrix(diag({-1.0}), "d"), 2.0);
  // λ‖R‖ = 2/3 for R = 1/3.
  CHECK(scalar.residual == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(scalar.passed);
  const CheckReport zero = resolvent_bound_check(GeneratorMatrix(Matrix::Zero(2, 2), "zero"), 1.0);
  CHECK(zero.residual == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(zero.passed);
  const CheckReport lap = resolvent_bound_check(dirichlet_second_difference(128), 0.5);
  CHECK(lap.passed);
  CHECK(lap.residual <= 1.0 + 1e-10);
}

TEST_CASE("resolvent bound flags an anti-dissipative generator") {
  const CheckReport bad = resolvent_bound_check(GeneratorMatrix(diag({0.5}), "grow"), 1.0);
  CHECK_FALSE(bad.passed);
  CHECK(bad.residual > 1.0);
}

TEST_CASE("contraction worked values") {
  const double times[] = {0.1, 1.0, 5.0};
  const CheckReport zero = contraction_check(ConformableSemigroup(GeneratorMatrix(Matrix::Zero(2, 2), "z"), Order(0.5)), times);
  CHECK(zero.residual == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(zero.passed);
  const double four[] = {4.0};
  const CheckReport dec = contraction_check(ConformableSemigroup(GeneratorMatrix(diag({-1.0}), "d"), Order(0.5)), four);
  CHECK(dec.residual == doctest::Approx(std::exp(-4.0)).epsilon(1e-13));
  const CheckReport lap = contraction_check(ConformableSemigroup(dirichlet_second_difference(64), Order(0.7)), times);
  CHECK(lap.passed);
  CHECK(lap.residual <= 1.0);
}

TEST_CASE("contraction failure is reported, not thrown") {
  const double times[] = {1.0};
  const CheckReport grow = contraction_check(ConformableSemigroup(GeneratorMatrix(diag({0.1}), "g"), Order(1.0)), times);
  CHECK_FALSE(grow.passed);
}

TEST_CASE("strong continuity profile for x in the range of A") {
  const GeneratorMatrix g(diag({-1.0, -2.0}), "d");
  const Vector x = g.entries() * vec({1.0, -0.5});
  for (double d : {0.3, 0.5, 0.9}) {
    const ContinuityProfile prof = strong_continuity_profile(ConformableSemigroup(g, Order(d)), x);
    CHECK(prof.decreasing);
    CHECK(prof.times.size() == 17);
    const double ax = g.norm(g.entries() * x);
    CHECK(std::abs(prof.fitted_constant / ax - 1.0) <= 0.1);
  }
}

TEST_CASE("orbit sets of S_δ and T∘Ψ coincide exactly") {
  Matrix a(3, 3);
  a << -1.0, 2.0, 0.0, 0.0, -0.5, 1.0, 0.3, 0.0, -2.0;
  const ConformableSemigroup cs(GeneratorMatrix(a, "a"), Order(0.6));
  const Vector x = vec({1.0, 0.0, -1.0});
  for (double t : {0.0, 0.01, 0.5, 2.0, 7.5}) CHECK(cs.evolve(t, x) == cs.base().evolve(cs.clock().psi(t), x));
}

TEST_CASE("weighted norms use the generator weights") {
  RealVector w(2);
  w << 4.0, 1.0;
  const GeneratorMatrix g(Matrix::Identity(2, 2), w, "weighted");
  CHECK(g.norm(vec({1.0, 0.0})) == 2.0);
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  // W^{1/2} m W^{-1/2} has the single entry 2.
  CHECK(g.operator_norm(m) == doctest::Approx(2.0));
  CHECK_THROWS(GeneratorMatrix(Matrix::Identity(2, 2), RealVector::Ones(3), "bad"));
  CHECK_THROWS(GeneratorMatrix(Matrix::Identity(2, 2), -RealVector::Ones(2), "bad"));
}
