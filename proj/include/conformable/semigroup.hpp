#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "conformable/check_report.hpp"
#include "conformable/clock.hpp"
#include "conformable/linalg.hpp"
#include "conformable/random.hpp"

namespace conformable {

/// Dense discretization of a generator together with the weights of the
/// discrete inner product ⟨x, y⟩_W = Σ w_i x_i ȳ_i defining its ambient space.
class GeneratorMatrix {
 public:
  GeneratorMatrix(Matrix entries, RealVector ip_weights, std::string label);
  /// Euclidean weights (all ones).
  GeneratorMatrix(Matrix entries, std::string label);

  const Matrix& entries() const noexcept { return entries_; }
  const RealVector& ip_weights() const noexcept { return weights_; }
  const std::string& label() const noexcept { return label_; }
  Eigen::Index size() const noexcept { return entries_.rows(); }

  double norm(const Vector& x) const { return weighted_norm(x, weights_); }
  double operator_norm(const Matrix& m) const { return weighted_operator_norm(m, weights_); }

 private:
  Matrix entries_;
  RealVector weights_;
  std::string label_;
};

/// s ↦ exp(sA): the classical semigroup generated by a GeneratorMatrix.
class ClassicalSemigroup {
 public:
  explicit ClassicalSemigroup(GeneratorMatrix generator) : generator_(std::move(generator)) {}

  const GeneratorMatrix& generator() const noexcept { return generator_; }
  Matrix propagator(double s) const;
  Vector evolve(double s, const Vector& x) const;

 private:
  GeneratorMatrix generator_;
};

/// t ↦ T(Ψ(t)): the classical semigroup read on the conformable clock.
class ConformableSemigroup {
 public:
  ConformableSemigroup(ClassicalSemigroup base, Clock clock) : base_(std::move(base)), clock_(clock) {}
  ConformableSemigroup(GeneratorMatrix generator, Order order) : base_(std::move(generator)), clock_(order) {}

  const ClassicalSemigroup& base() const noexcept { return base_; }
  const GeneratorMatrix& generator() const noexcept { return base_.generator(); }
  const Clock& clock() const noexcept { return clock_; }

  Matrix propagator(double t) const { return base_.propagator(clock_.psi(t)); }
  Vector evolve(double t, const Vector& x) const { return base_.evolve(clock_.psi(t), x); }

 private:
  ClassicalSemigroup base_;
  Clock clock_;
};

/// Orbit samples; norms are taken in the generator's W inner product.
struct OrbitSample {
  std::vector<double> times;
  std::vector<Vector> states;
  std::vector<double> norms;
};

Vector evolve_classical(const GeneratorMatrix& g, double s, const Vector& x);
Vector evolve_conformable(const ConformableSemigroup& cs, double t, const Vector& x);

/// ‖S_δ((r+q)^{1/δ})x − S_δ(r^{1/δ}) S_δ(q^{1/δ})x‖_W.
double delta_law_residual(const ConformableSemigroup& cs, double r, double q, const Vector& x);

/// Extrapolates the δ-difference quotient (S_δ(t)x − x)/Ψ(t) to t → 0 by
/// polynomial (Neville) extrapolation in Ψ(t). Throws NumericalError when the
/// last two extrapolants disagree.
Vector generator_delta_quotient(const ConformableSemigroup& cs, const Vector& x, std::span<const double> t_seq);

/// Same extrapolation for the classical quotient (T(s)x − x)/s.
Vector generator_classical_quotient(const ClassicalSemigroup& semigroup, const Vector& x,
                                    std::span<const double> s_seq);

/// Times t_k = Ψ⁻¹(s0·2^{-k}), k = 0..count-1, decreasing to 0.
std::vector<double> halving_clock_times(const Clock& clock, double s0, int count);

struct OdeOptions {
  int output_points = 21;  // grid t_k = k·t_end/(output_points−1)
  double rtol = 1e-11;
  double atol = 1e-13;
};

/// Integrates x'(t) = t^{δ-1} A x(t) with an adaptive Dormand–Prince 5(4)
/// scheme on [t₀, t_end], t₀ = min(1e-3, (1e-3 δ)^{1/δ}); the start segment
/// [0, t₀] is advanced by exp(Ψ(t₀)A). Returns the orbit on a uniform grid.
OrbitSample solve_conformable_ode(const GeneratorMatrix& g, Order order, const Vector& x0, double t_end,
                                  OdeOptions opts = {});

/// max over ‖x‖_W = 1 of Re⟨Ax, x⟩_W, the top eigenvalue of the Hermitian
/// part of W^{1/2} A W^{-1/2}.
double dissipativity_margin(const GeneratorMatrix& g);

/// Checks ‖(λI − A)^{-1}‖_W ≤ 1/λ and ‖(λI − A)x‖_W ≥ λ‖x‖_W on random x.
/// Residual is the worst ratio λ‖R‖ (or λ‖x‖/‖(λI−A)x‖); tolerance 1 + 1e-10.
CheckReport resolvent_bound_check(const GeneratorMatrix& g, double lambda, std::uint64_t seed = 0,
                                  int random_vectors = 100);

/// Checks ‖S_δ(t)‖_W ≤ 1 + 1e-10 on the given times; residual is the largest norm.
CheckReport contraction_check(const ConformableSemigroup& cs, std::span<const double> t_grid);

/// Strong-continuity profile at t_k = 2^{-k}: distances ‖S_δ(t)x − x‖, the
/// fitted constant C = max_k distance/Ψ(t_k), and whether distances decrease.
struct ContinuityProfile {
  std::vector<double> times;
  std::vector<double> distances;
  double fitted_constant = 0.0;
  bool decreasing = false;
};

ContinuityProfile strong_continuity_profile(const ConformableSemigroup& cs, const Vector& x, int k_first = 4,
                                            int k_last = 20);

/// (1/h²)·tridiag(1, −2, 1) on n interior nodes of [0, 1], h = 1/(n+1), with W = h·I.
GeneratorMatrix dirichlet_second_difference(int n);

/// Random complex vector with entries uniform in the unit square.
Vector random_vector(Eigen::Index n, SeededRng& rng);

}  // namespace conformable
