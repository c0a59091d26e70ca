#pragma once

namespace conformable {

/// Conformable order δ ∈ (0, 1].
class Order {
 public:
  explicit Order(double delta);

  double value() const noexcept { return delta_; }
  bool is_classical() const noexcept { return delta_ == 1.0; }

  friend bool operator==(const Order&, const Order&) = default;

 private:
  double delta_;
};

/// The conformable clock Ψ(t) = t^δ/δ and its inverse Ψ⁻¹(s) = (δs)^{1/δ}.
///
/// Ψ maps [0, ∞) bijectively onto itself and is strictly increasing. Composing
/// a classical semigroup with Ψ produces the conformable one, and the same
/// map (with δ read as α) serves as the spatial clock of the transport model.
class Clock {
 public:
  explicit Clock(Order order) : order_(order) {}
  explicit Clock(double delta) : order_(delta) {}

  Order order() const noexcept { return order_; }
  double delta() const noexcept { return order_.value(); }

  double psi(double t) const;
  double psi_inv(double s) const;

 private:
  Order order_;
};

// Free-function forms of the clock operations.
inline double psi(const Clock& clock, double t) { return clock.psi(t); }
inline double psi_inv(const Clock& clock, double s) { return clock.psi_inv(s); }

/// t^p for t ≥ 0 evaluated as exp(p ln t) with 0 ↦ 0 (p > 0).
double pow_nonneg(double t, double p);

/// Values in (−1e-15, 0) are floating-point dust from upstream subtraction and
/// snap to 0; anything more negative is a DomainError.
double clamp_nonneg(double t, const char* what);

}  // namespace conformable
