#include "conformable/linalg.hpp"

#include <array>
#include <cmath>

#include "conformable/errors.hpp"

namespace conformable {

namespace {

// Higham (2005) coefficients for the [13/13] Padé approximant.
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

}  // namespace

Matrix expm(const Matrix& a) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw NumericalError("expm: matrix must be square");
  if (!a.allFinite()) throw NumericalError("expm: non-finite matrix entries");
  if (n == 0) return a;
  if (a.isZero(0.0)) return Matrix::Identity(n, n);

  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
  const Matrix as = a * std::ldexp(1.0, -squarings);

  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = as * as;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const auto& b = kPade13;
  const Matrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
  const Matrix u = as * u_inner;
  const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;

  Matrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  if (!r.allFinite()) throw NumericalError("expm: overflow in scaling and squaring");
  return r;
}

double weighted_norm(const Vector& x, const RealVector& weights) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) acc += weights[i] * std::norm(x[i]);
  return std::sqrt(acc);
}

std::complex<double> weighted_inner(const Vector& x, const Vector& y, const RealVector& weights) {
  std::complex<double> acc{};
  for (Eigen::Index i = 0; i < x.size(); ++i) acc += weights[i] * x[i] * std::conj(y[i]);
  return acc;
}

Matrix symmetrize_weights(const Matrix& m, const RealVector& weights) {
  const RealVector root = weights.cwiseSqrt();
  return root.asDiagonal() * m * root.cwiseInverse().asDiagonal();
}

double weighted_operator_norm(const Matrix& m, const RealVector& weights) {
  const Matrix b = symmetrize_weights(m, weights);
  if (b.rows() <= 16) {
    Eigen::JacobiSVD<Matrix> svd(b);
    return svd.singularValues()(0);
  }
  Eigen::BDCSVD<Matrix> svd(b);
  return svd.singularValues()(0);
}

}  // namespace conformable
