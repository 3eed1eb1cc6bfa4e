#pragma once

#include <cstdint>
#include <string_view>

#include "noonqfi/channel_models.hpp"
#include "noonqfi/linalg.hpp"

namespace noonqfi {

// N00N probe (|0...0> + e^{-i n phi}|1...1>)/sqrt(2) after n independent
// identical qubit channels. |0> is the sigma_z = +1 state ("head"), so
// relaxation (f -> 1) drives the register to |0...0>.
//
// The state is block diagonal: every computational basis state carries a
// diagonal weight that depends only on its Hamming weight, and the only
// coherence is the corner c e^{i n phi} |0...0><1...1| + h.c. with c = g^n / 2.
struct EvolvedNoonState {
  int n = 1;
  double phi = 0.0;
  ChannelParams params;
  double a_head = 0.5;  // <0...0|rho|0...0>
  double a_tail = 0.5;  // <1...1|rho|1...1>
  double c = 0.5;       // |corner coherence|

  double block_trace() const { return a_head + a_tail; }
  cplx corner() const;  // <0...0|rho|1...1>
};

inline constexpr int kMaxDenseQubits = 12;

class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m);

  const Matrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  cplx operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  double trace() const;
  double hermiticity_residual() const;
  double min_eigenvalue() const;

 private:
  Matrix m_;
};

EvolvedNoonState evolve(int n, double phi, const ChannelParams& params);

/// Diagonal weight of the computational basis state with the given ones count.
double diagonal_weight(const EvolvedNoonState& state, int ones);

/// bits is a string of '0'/'1' of length n; throws DomainError otherwise.
double diagonal_weight(const EvolvedNoonState& state, std::string_view bits);

/// Bit j of the string is qubit j, which is bit (n-1-j) of the index.
double diagonal_weight_at(const EvolvedNoonState& state, std::uint64_t index);

/// Literal assembly of the four tensor-product terms; n <= 12.
DensityMatrix dense_density(const EvolvedNoonState& state);

/// d rho / d phi (only the two corners are nonzero); n <= 12.
Matrix dense_phase_derivative(const EvolvedNoonState& state);

}  // namespace noonqfi
