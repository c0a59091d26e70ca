#pragma once

#include <Eigen/Dense>
#include <complex>

namespace conformable {

using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// exp(A) by scaling and squaring around the degree-13 Padé approximant.
Matrix expm(const Matrix& a);

/// ‖x‖_W = (Σ w_i |x_i|²)^{1/2}.
double weighted_norm(const Vector& x, const RealVector& weights);

/// ⟨x, y⟩_W = Σ w_i x_i ȳ_i.
std::complex<double> weighted_inner(const Vector& x, const Vector& y, const RealVector& weights);

/// Operator norm of M in the W inner product: σ_max(W^{1/2} M W^{-1/2}).
double weighted_operator_norm(const Matrix& m, const RealVector& weights);

/// W^{1/2} M W^{-1/2}.
Matrix symmetrize_weights(const Matrix& m, const RealVector& weights);

}  // namespace conformable
