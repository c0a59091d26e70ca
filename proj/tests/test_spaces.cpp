#include <doctest.h>

#include <cmath>
#include <numbers>

#include "conformable/errors.hpp"
#include "conformable/random.hpp"
#include "conformable/weighted_spaces.hpp"

using namespace conformable;

namespace {

double relerr(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

FunctionHandle polynomial(std::array<double, 4> c) {
  return FunctionHandle([c](double t) -> Complex { return c[0] + t * (c[1] + t * (c[2] + t * c[3])); },
                        [c](double t) -> Complex { return c[1] + t * (2.0 * c[2] + 3.0 * t * c[3]); },
                        [c](double t) -> Complex { return 2.0 * c[2] + 6.0 * t * c[3]; });
}

}  // namespace

TEST_CASE("lp_delta_norm worked values") {
  for (double d : {0.3, 0.5, 1.0}) {
    CHECK(relerr(lp_delta_norm(functions::constant(1.0), SpaceSpec(Order(d), 2.0, 1.0)), std::sqrt(1.0 / d)) <= 1e-13);
  }
  CHECK(relerr(lp_delta_norm(functions::monomial(1), SpaceSpec(Order(0.5), 2.0, 1.0)), std::sqrt(0.4)) <= 1e-13);
  CHECK(lp_delta_norm(functions::constant(0.0), SpaceSpec(Order(0.5), 2.0, 1.0)) == 0.0);
}

TEST_CASE("lp_delta_norm rejects non-finite integrands and bad specs") {
  const FunctionHandle bad([](double) -> Complex { return std::nan(""); });
  CHECK_THROWS_AS(lp_delta_norm(bad, SpaceSpec(Order(0.5), 2.0, 1.0)), NumericalError);
  CHECK_THROWS_AS(SpaceSpec(Order(0.5), 0.5, 1.0), DomainError);
  CHECK_THROWS_AS(SpaceSpec(Order(0.5), 2.0, 0.0), DomainError);
}

TEST_CASE("inner product worked values") {
  const SpaceSpec half(Order(0.5), 2.0, 1.0);
  CHECK(std::abs(inner_product_2delta(functions::constant(1.0), functions::constant(1.0), half) - 2.0) <= 1e-13);
  const SpaceSpec classical(Order(1.0), 2.0, 1.0);
  CHECK(std::abs(inner_product_2delta(functions::monomial(1), functions::constant(1.0), classical) - 0.5) <= 1e-13);
}

TEST_CASE("one Gram-Schmidt step gives an orthogonal pair") {
  for (double d : {0.3, 0.5, 0.9}) {
    const SpaceSpec spec(Order(d), 2.0, 1.0);
    const FunctionHandle one = functions::constant(1.0);
    const Complex centre = inner_product_2delta(functions::monomial(1), one, spec) / inner_product_2delta(one, one, spec);
    const FunctionHandle g([centre](double t) -> Complex { return t - centre; });
    CHECK(std::abs(inner_product_2delta(one, g, spec)) <= 1e-10);
    // ∫ t dμ / ∫ dμ = (1/(1+δ)) / (1/δ) on (0, 1).
    CHECK(std::abs(centre - d / (1.0 + d)) <= 1e-13);
  }
}

TEST_CASE("inner product is Hermitian with a real nonnegative diagonal") {
  const SpaceSpec spec(Order(0.4), 2.0, 1.5);
  const FunctionHandle f([](double t) -> Complex { return {std::cos(t), t}; });
  const FunctionHandle g([](double t) -> Complex { return {t * t, -1.0}; });
  CHECK(std::abs(inner_product_2delta(f, g, spec) - std::conj(inner_product_2delta(g, f, spec))) <= 1e-13);
  const Complex ff = inner_product_2delta(f, f, spec);
  CHECK(ff.real() > 0.0);
  CHECK(ff.imag() == 0.0);
  CHECK_THROWS_AS(inner_product_2delta(f, g, SpaceSpec(Order(0.4), 1.0, 1.5)), DomainError);
}

TEST_CASE("time isometry worked values") {
  const TimeIsometry half(Order(0.5), 4.0);
  CHECK(half.target_horizon() == doctest::Approx(4.0).epsilon(1e-15));
  const FunctionHandle uf = half.apply(functions::constant(1.0));
  CHECK(uf(0.7) == Complex(1.0));
  const FunctionHandle up = half.apply(functions::power(0.5));
  for (double s : {0.1, 1.0, 3.9}) CHECK(std::abs(up(s) - s / 2.0) <= 1e-15 * (1.0 + s));
  const TimeIsometry one(Order(1.0), 2.0);
  const FunctionHandle us = one.apply(functions::sine());
  for (double s : {0.1, 1.0, 1.9}) CHECK(us(s) == std::sin(s));
  CHECK_THROWS_AS(half.apply(functions::sine())(4.5), DomainError);
}

TEST_CASE("time isometry round trip") {
  for (double d : {0.3, 0.5, 0.9}) {
    const TimeIsometry iso(Order(d), 1.0);
    const FunctionHandle back = iso.inverse(iso.apply(functions::exp_scaled(0.3)));
    for (int k = 1; k < 50; ++k) {
      const double t = k / 50.0;
      CHECK(std::abs(back(t) - std::exp(0.3 * t)) <= 1e-13 * std::exp(0.3 * t));
    }
  }
}

TEST_CASE("isometry of the weighted norm") {
  const FunctionHandle corpus[] = {functions::constant(1.0), functions::monomial(1), functions::monomial(2),
                                   functions::sine(), functions::exp_scaled(-1.0)};
  for (double d : {0.3, 0.5, 0.9}) {
    const TimeIsometry iso(Order(d), 1.0);
    QuadratureRule plain;
    plain.grading = clock_grading(Order(d), plain.points);
    for (double p : {1.0, 2.0}) {
      for (const auto& f : corpus) {
        const double lhs = lp_delta_norm(f, SpaceSpec(Order(d), p, 1.0));
        const double rhs = lp_norm_plain(iso.apply(f), 0.0, iso.target_horizon(), p, plain);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * lhs);
      }
    }
  }
}

TEST_CASE("spatial unitary worked values") {
  const SpatialUnitary half(Order(0.5));
  const FunctionHandle f = functions::power(0.5);
  CHECK(relerr(std::pow(lp_delta_norm(f, SpaceSpec(Order(0.5), 2.0, 1.0)), 2), 2.0 / 3.0) <= 1e-13);
  QuadratureRule plain;
  plain.grading = clock_grading(Order(0.5), plain.points);
  const double forward = std::pow(lp_norm_plain(half.apply(f, Direction::kForward), 0.0, 1.0, 2.0, plain), 2);
  CHECK(relerr(forward, 2.0 / 3.0) <= 1e-13);

  const SpatialUnitary one(Order(1.0));
  const FunctionHandle same = one.apply(functions::sine(), Direction::kForward);
  for (double x : {0.1, 0.5, 0.9}) CHECK(same(x) == std::sin(x));

  for (double d : {0.3, 0.5, 0.9}) {
    const SpatialUnitary u{Order(d)};
    const FunctionHandle round = u.apply(u.apply(functions::sine(), Direction::kForward), Direction::kInverse);
    double worst = 0.0;
    for (int k = 1; k < 100; ++k) worst = std::max(worst, std::abs(round(k / 100.0) - std::sin(k / 100.0)));
    CHECK(worst <= 1e-13);
  }
  CHECK_THROWS_AS(half.apply(functions::sine(), Direction::kForward)(1.5), DomainError);
}

TEST_CASE("spatial unitarity: ‖x^δ‖² = 1/(3δ) on both sides") {
  for (double d : {0.3, 0.5, 0.9}) {
    const SpatialUnitary u{Order(d)};
    QuadratureRule plain;
    plain.grading = clock_grading(Order(d), plain.points);
    const FunctionHandle f = functions::power(d);
    const double lhs = std::pow(lp_delta_norm(f, SpaceSpec(Order(d), 2.0, 1.0)), 2);
    const double rhs = std::pow(lp_norm_plain(u.apply(f, Direction::kForward), 0.0, 1.0, 2.0, plain), 2);
    CHECK(std::abs(lhs - 1.0 / (3.0 * d)) <= 1e-10 * lhs);
    CHECK(std::abs(rhs - lhs) <= 1e-10 * lhs);
  }
}

TEST_CASE("sobolev norm worked values") {
  for (double d : {0.3, 0.5}) {
    CHECK(relerr(sobolev_norm(functions::constant(1.0), 1, SpaceSpec(Order(d), 2.0, 1.0)), std::sqrt(1.0 / d)) <= 1e-13);
  }
  CHECK(relerr(sobolev_norm(functions::monomial(1), 1, SpaceSpec(Order(1.0), 2.0, 1.0)), std::sqrt(1.0 / 3.0 + 1.0)) <=
        1e-13);
  const SpaceSpec spec(Order(0.4), 2.0, 1.0);
  CHECK(sobolev_norm(functions::sine(), 0, spec) == lp_delta_norm(functions::sine(), spec));
  const FunctionHandle bare([](double t) -> Complex { return t; });
  CHECK_THROWS_AS(sobolev_norm(bare, 1, spec), CapabilityError);
}

TEST_CASE("sobolev norm is monotone in m") {
  SeededRng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const FunctionHandle f = polynomial({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
    const SpaceSpec spec(Order(rng.uniform(0.2, 1.0)), 2.0, 1.0);
    const double m0 = sobolev_norm(f, 0, spec);
    const double m1 = sobolev_norm(f, 1, spec);
    const double m2 = sobolev_norm(f, 2, spec);
    CHECK(m1 >= m0);
    CHECK(m2 >= m1);
  }
}

TEST_CASE("Cauchy-Schwarz on random polynomial pairs") {
  SeededRng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const SpaceSpec spec(Order(rng.uniform(0.2, 1.0)), 2.0, 1.0);
    const FunctionHandle f = polynomial({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
    const FunctionHandle g = polynomial({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
    CHECK(std::abs(inner_product_2delta(f, g, spec)) <= lp_delta_norm(f, spec) * lp_delta_norm(g, spec) * (1.0 + 1e-12));
  }
}

TEST_CASE("transported weight worked values") {
  const FunctionHandle rho = transported_weight(WeightSpec(Order(0.5), functions::exp_scaled(-1.0)));
  for (double xi : {0.0, 0.5, 2.0, 5.0}) CHECK(std::abs(rho(xi) - std::exp(-xi * xi / 4.0)) <= 1e-15);
  const FunctionHandle same = transported_weight(WeightSpec(Order(1.0), functions::exp_scaled(-1.0)));
  for (double xi : {0.5, 2.0}) CHECK(same(xi) == std::exp(-xi));
  const FunctionHandle flat = transported_weight(WeightSpec(Order(0.3), functions::constant(1.0)));
  CHECK(flat(3.0) == Complex(1.0));
  CHECK_THROWS_AS(WeightSpec(Order(0.5), functions::constant(-1.0)), DomainError);
}
