#pragma once

#include <complex>

#include <Eigen/Dense>

namespace noonqfi {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;

namespace pauli {
Matrix2 identity();
Matrix2 x();
Matrix2 y();
Matrix2 z();
/// |0><1|, the decay operator toward the sigma_z = +1 state.
Matrix2 lowering();
}  // namespace pauli

Matrix kron(const Matrix& a, const Matrix& b);

/// Embeds a single-qubit operator on qubit `site` of an `n_qubits` register
/// (qubit 0 is the most significant index bit).
Matrix embed(const Matrix2& op, int site, int n_qubits);

double hermiticity_residual(const Matrix& m);
double frobenius(const Matrix& m);

}  // namespace noonqfi
