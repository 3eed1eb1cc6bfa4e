#include "noonqfi/linalg.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace noonqfi {

namespace pauli {

Matrix2 identity() { return Matrix2::Identity(); }

Matrix2 x() {
  Matrix2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix2 y() {
  Matrix2 m;
  m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
  return m;
}

Matrix2 z() {
  Matrix2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Matrix2 lowering() {
  Matrix2 m;
  m << 0.0, 1.0, 0.0, 0.0;
  return m;
}

}  // namespace pauli

Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Matrix embed(const Matrix2& op, int site, int n_qubits) {
  const Eigen::Index left = Eigen::Index{1} << site;
  const Eigen::Index right = Eigen::Index{1} << (n_qubits - site - 1);
  return kron(kron(Matrix::Identity(left, left), op), Matrix::Identity(right, right));
}

double hermiticity_residual(const Matrix& m) { return (m - m.adjoint()).norm(); }

double frobenius(const Matrix& m) { return m.norm(); }

}  // namespace noonqfi
