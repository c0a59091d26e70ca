#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "conformable/check_report.hpp"
#include "conformable/clock.hpp"
#include "conformable/function.hpp"
#include "conformable/semigroup.hpp"

namespace conformable {

/// Coefficients of the conformable drift–diffusion operator
/// a ∂^δ∂^δ f + b ∂^δ f + c f on (0, 1); a, b, c > 0.
struct DriftDiffusionParams {
  DriftDiffusionParams(double a, double b, double c, Order delta);

  double a;
  double b;
  double c;
  Order delta;
};

/// Classical coefficients of the conjugated operator ã g'' + b̃ g' + c g.
struct TransferredCoefficients {
  double a_tilde;
  double b_tilde;
  double c;

  /// b̃²/(2ã).
  double ratio() const { return b_tilde * b_tilde / (2.0 * a_tilde); }
};

/// (aδ², bδ, c).
TransferredCoefficients parameter_transfer(const DriftDiffusionParams& p);

/// Matched grids: ξ_i = i h uniform and x_i = ξ_i^{1/δ} graded, i = 1..n,
/// h = 1/(n+1). Nodes at 0 and 1 are kept as the ends of `*_with_ends`.
class GridPair {
 public:
  GridPair(int n, Order delta);

  int n() const noexcept { return n_; }
  double h() const noexcept { return h_; }
  Order order() const noexcept { return order_; }
  const std::vector<double>& xi_nodes() const noexcept { return xi_; }
  const std::vector<double>& x_nodes() const noexcept { return x_; }
  std::vector<double> xi_with_ends() const;
  std::vector<double> x_with_ends() const;

 private:
  int n_;
  double h_;
  Order order_;
  std::vector<double> xi_;
  std::vector<double> x_;
};

enum class RightBoundary {
  kFree,       // one-sided 4-point closure in the last row, no condition at 1
  kDirichlet,  // value 0 at the right end, eliminated
};

/// Rows of diffusion·D(D f) + drift·D f + reaction·f with D = z^{1-δ} d/dz on
/// the nodes z_1..z_n (`nodes` also holds z_0 = 0 and z_{n+1}). The outer D is
/// applied at z_i, the inner at the midpoints (z_i + z_{i±1})/2.
Matrix drift_diffusion_matrix(double diffusion, double drift, double reaction, double delta,
                              std::span<const double> nodes, RightBoundary right = RightBoundary::kFree);

/// Ã_h on the ξ grid with W = h·I.
GeneratorMatrix build_classical_operator(const DriftDiffusionParams& p, const GridPair& grid,
                                         RightBoundary right = RightBoundary::kFree);

/// A_{δ,h} on the graded x grid with W = (h/δ)·I, the discrete t^{δ-1}dt measure.
GeneratorMatrix build_conformable_operator(const DriftDiffusionParams& p, const GridPair& grid,
                                           RightBoundary right = RightBoundary::kFree);

struct DiscreteUnitary {
  Matrix forward;  // δ^{-1/2} I
  Matrix inverse;  // δ^{1/2} I
};

/// Throws ConfigError when `delta` differs from the grid's order.
DiscreteUnitary discrete_unitary(const GridPair& grid, Order delta);

/// Smooth test functions on [0, 1] vanishing to fourth order at 0.
std::vector<ScalarFn> conjugacy_core_functions();

/// max over the core functions g of the interior max-norm of
/// (U A_{δ,h} U^{-1} − Ã_h) g, rows within 3 nodes of either end excluded.
std::vector<std::pair<int, double>> conjugacy_residual(const DriftDiffusionParams& p, std::span<const int> n_list);

/// log(r_k / r_{k+1}) / log(n_{k+1} / n_k); log₂ of the ratio when n doubles.
std::vector<double> empirical_orders(const std::vector<std::pair<int, double>>& residuals);

/// Passes when every residual is ≤ 1e-12, or the residuals decrease with
/// empirical order ≥ min_order. In the latter case the residual is the worst
/// r_{k+1}/r_k · (n_{k+1}/n_k)^{min_order} against tolerance 1.
CheckReport conjugacy_convergence_check(const DriftDiffusionParams& p, std::span<const int> n_list,
                                        double min_order = 1.5);

/// Entire family of solutions of ã φ'' + b̃ φ' + (c − λ) φ = 0 with φ(0) = 0.
class EigenfunctionFamily {
 public:
  explicit EigenfunctionFamily(const DriftDiffusionParams& p);
  explicit EigenfunctionFamily(TransferredCoefficients coefficients);

  const TransferredCoefficients& coefficients() const noexcept { return coeff_; }

  /// Roots (μ₁, μ₂) of ã μ² + b̃ μ + (c − λ) = 0, μ₁ = m + d, μ₂ = m − d.
  std::pair<std::complex<double>, std::complex<double>> roots(std::complex<double> lambda) const;

  /// k-th ξ-derivative of φ_λ = (e^{μ₁ξ} − e^{μ₂ξ})/(μ₁ − μ₂); ξ e^{μξ} when
  /// |μ₁ − μ₂| < 1e-8.
  std::complex<double> evaluate(std::complex<double> lambda, double xi, int k = 0) const;

 private:
  TransferredCoefficients coeff_;
};

FunctionHandle eigenfunction(const EigenfunctionFamily& fam, std::complex<double> lambda);

struct SpectralTerm {
  std::complex<double> lambda;
  std::complex<double> coeff;
};

/// Each coefficient times e^{λ t}.
std::vector<SpectralTerm> spectral_evolve(const std::vector<SpectralTerm>& combo, double t);

/// Σ coeff_j φ_{λ_j}(ξ).
std::complex<double> spectral_value(const EigenfunctionFamily& fam, const std::vector<SpectralTerm>& combo, double xi);

/// Interior max-norm of Ã_h φ_λ − λ φ_λ on the ξ grid (free closure), and the
/// scale max_i |φ_λ''''(ξ_i)| over the same rows.
struct EigenResidual {
  double residual = 0.0;
  double fourth_derivative_scale = 0.0;
  double h = 0.0;
};

EigenResidual eigen_residual(const EigenfunctionFamily& fam, std::complex<double> lambda, int n);

/// Evolves f = U^{-1} g (g = sin⁴(πξ)) under A_{δ,h} and Ug under Ã_h with
/// Dirichlet closures and compares in the ξ-picture norm. residual is
/// max_t gap(t) / (t · max_{s≤t} ‖(U A_{δ,h} U^{-1} − Ã_h) e^{sA_{δ,h}} f‖),
/// tolerance 5, over t ∈ {0.25, 0.5, 0.75, 1}.
struct CorrespondenceResult {
  CheckReport report;
  double gap_at_one = 0.0;
};

CorrespondenceResult mild_solution_correspondence(const DriftDiffusionParams& p, int n);

/// max relative deviation of ∂_x^δ u(ξ^{1/δ}) from δ w'(ξ) (order 1) or of
/// ∂^δ∂^δ u from δ² w''(ξ) (order 2), w(ξ) = u(ξ^{1/δ}), at the sample ξ.
double derivative_identity_residual(const FunctionHandle& u, Order delta, int derivative_order,
                                    std::span<const double> xi_samples);

}  // namespace conformable
