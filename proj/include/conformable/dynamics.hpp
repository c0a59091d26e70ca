#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "conformable/check_report.hpp"
#include "conformable/drift_diffusion.hpp"
#include "conformable/semigroup.hpp"

namespace conformable {

struct DswCondition {
  bool holds = false;
  double ratio = 0.0;         // b²/(2a)
  double lower_margin = 0.0;  // b²/(2a) − c
  double upper_margin = 0.0;  // 1 − b²/(2a)
};

/// c < b²/(2a) < 1.
DswCondition dsw_condition_check(const DriftDiffusionParams& p);

/// Rectangle of λ samples [re_min, re_max] × [im_min, im_max] on a
/// re_count × im_count lattice.
struct LambdaRectangle {
  double re_min = -0.2;
  double re_max = 0.2;
  double im_min = 0.0;
  double im_max = 1.0;
  int re_count = 3;
  int im_count = 3;

  std::vector<std::complex<double>> samples() const;
};

struct LambdaSample {
  std::complex<double> lambda;
  double residual = 0.0;
  double bound = 0.0;  // 10 h² max|φ''''|
  bool passed = false;
};

struct DswProbeOptions {
  double contour_radius = 0.1;
  int contour_points = 64;
  double analyticity_tol = 1e-8;
  double gram_threshold = 1e-10;
  std::vector<std::complex<double>> gram_lambdas{{0.0, 0.0}, {0.0, 10.0}, {0.0, 20.0}, {0.0, 30.0}};
};

struct DSWReport {
  TransferredCoefficients coefficients{};
  std::optional<DswCondition> condition;
  std::vector<LambdaSample> v_samples;
  std::vector<LambdaSample> imag_axis_samples;
  /// Worst relative contour-mean deviation per rectangle sample.
  std::vector<double> analyticity_residuals;
  /// Worst change of the contour mean when the radius is halved.
  double radius_dependence = 0.0;
  double separation_gram = 0.0;
  bool eigen_ok = false;
  bool analyticity_ok = false;
  bool separation_ok = false;
};

/// Point-spectrum, analyticity and separation probes of the eigenfunction
/// family at grid size n. Throws ConfigError when the rectangle has fewer than
/// 9 samples or misses the imaginary axis.
DSWReport dsw_hypotheses_probe(const EigenfunctionFamily& fam, const LambdaRectangle& rect, int n,
                               const DswProbeOptions& opts = {});
DSWReport dsw_hypotheses_probe(const DriftDiffusionParams& p, const LambdaRectangle& rect, int n,
                               const DswProbeOptions& opts = {});

/// Residual is the worst of (i) relative ‖S_δ(Ψ⁻¹(s))x − T(s)x‖, (ii) the
/// return-distance mismatch and (iii) the norm mismatch over s_list;
/// tolerance 1e-13.
CheckReport clock_invariance_check(const ConformableSemigroup& cs, const Vector& x, std::span<const double> s_list);

struct X0Record {
  std::complex<double> lambda;
  double t = 0.0;
  double magnitude = 0.0;
  double error = 0.0;  // |magnitude − e^{Re λ t}|
  double tolerance = 1e-12;
  bool passed = false;
};

/// Throws DomainError unless Re λ < 0. The last record fails when the
/// magnitudes are not monotonically decreasing along an increasing t_grid.
std::vector<X0Record> x0_probe(const EigenfunctionFamily& fam, std::complex<double> lambda,
                               std::span<const double> t_grid);

struct XinfRecord {
  std::complex<double> lambda;
  double eps = 0.0;
  double phi_norm = 0.0;   // ‖φ_λ‖ in L²(0,1) before normalization
  double t_star = 0.0;
  double seed_norm = 0.0;  // ‖y‖
  double terminal_error = 0.0;
  double tolerance = 1e-12;
  bool passed = false;
};

/// Witness y = e^{−λt*} x for the unit-norm target x = φ_λ/‖φ_λ‖ with
/// t* = max(0, ln(1/ε′)/Re λ), ε′ = 0.999 ε. Throws DomainError unless Re λ > 0.
XinfRecord xinf_probe(const EigenfunctionFamily& fam, std::complex<double> lambda, double eps);

struct PeriodicRecord {
  double omega = 0.0;
  double period = 0.0;                  // 2π/ω
  double conformable_return_time = 0.0;  // Ψ⁻¹(period)
  double return_error = 0.0;
  double conformable_return_error = 0.0;
  double half_period_error = 0.0;
  double tolerance = 1e-9;
  bool passed = false;
};

/// Real combination φ_{iω} + φ_{−iω}; the conformable return is checked on the
/// diagonal generator diag(iω, −iω) through clock_invariance_check.
PeriodicRecord periodic_orbit_check(const EigenfunctionFamily& fam, double omega, Order order);

struct DynSetsReport {
  std::vector<X0Record> x0_decay;
  std::vector<XinfRecord> xinf_records;
  std::vector<PeriodicRecord> periodic_records;
};

/// L²(0,1) inner product by 64-point Gauss–Legendre, ∫ f ḡ.
std::complex<double> l2_unit_inner(const ScalarFn& f, const ScalarFn& g);

}  // namespace conformable
