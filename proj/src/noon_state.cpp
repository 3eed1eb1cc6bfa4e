#include "noonqfi/noon_state.hpp"

#include <bit>
#include <cmath>
#include <string>

#include <Eigen/SparseCore>
#include <unsupported/Eigen/KroneckerProduct>

#include "noonqfi/errors.hpp"

namespace noonqfi {

namespace {

using Sparse = Eigen::SparseMatrix<cplx>;

void require_dense(int n) {
  if (n < 1) throw DomainError("photon number must be at least 1");
  if (n > kMaxDenseQubits) {
    throw CapacityError("dense representation limited to n <= " +
                        std::to_string(kMaxDenseQubits) + ", got " + std::to_string(n));
  }
}

Sparse to_sparse(const Matrix2& m) { return m.sparseView(); }

Sparse kron_power(const Matrix2& factor, int n) {
  const Sparse s = to_sparse(factor);
  Sparse out = s;
  for (int k = 1; k < n; ++k) {
    Sparse next = Eigen::kroneckerProduct(out, s);
    out = std::move(next);
  }
  return out;
}

// The four tensor terms, each already carrying its 2^{-(n+1)} prefactor.
struct NoonTerms {
  Sparse head;
  Sparse tail;
  Sparse raise;
  Sparse lower;
};

NoonTerms assemble_terms(const EvolvedNoonState& s) {
  const ChannelParams& p = s.params;
  const double scale = std::ldexp(1.0, -(s.n + 1));
  const cplx phase = std::polar(1.0, s.n * s.phi);
  const double coherence = std::pow(p.g, s.n);

  const Matrix2 id = pauli::identity();
  const Matrix2 sz = pauli::z();
  const Matrix2 sp = pauli::x() + cplx(0.0, 1.0) * pauli::y();
  const Matrix2 sm = pauli::x() - cplx(0.0, 1.0) * pauli::y();

  NoonTerms t;
  t.head = kron_power(id + (p.f + p.h) * sz, s.n) * cplx(scale);
  t.tail = kron_power(id + (p.f - p.h) * sz, s.n) * cplx(scale);
  t.raise = kron_power(sp, s.n) * (scale * coherence * phase);
  t.lower = kron_power(sm, s.n) * (scale * coherence * std::conj(phase));
  return t;
}

}  // namespace

cplx EvolvedNoonState::corner() const { return std::polar(c, n * phi); }

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw DomainError("density matrix must be square");
}

double DensityMatrix::trace() const { return m_.trace().real(); }

double DensityMatrix::hermiticity_residual() const { return noonqfi::hermiticity_residual(m_); }

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

EvolvedNoonState evolve(int n, double phi, const ChannelParams& params) {
  if (n < 1) throw DomainError("photon number must be at least 1");
  const double up_head = 0.5 * (1.0 + params.f + params.h);
  const double down_head = 0.5 * (1.0 - params.f - params.h);
  const double up_tail = 0.5 * (1.0 + params.f - params.h);
  const double down_tail = 0.5 * (1.0 - params.f + params.h);

  EvolvedNoonState s;
  s.n = n;
  s.phi = phi;
  s.params = params;
  s.a_head = 0.5 * (std::pow(up_head, n) + std::pow(up_tail, n));
  s.a_tail = 0.5 * (std::pow(down_head, n) + std::pow(down_tail, n));
  s.c = 0.5 * std::pow(params.g, n);
  return s;
}

double diagonal_weight(const EvolvedNoonState& state, int ones) {
  if (ones < 0 || ones > state.n) throw DomainError("ones count out of range");
  const ChannelParams& p = state.params;
  const int zeros = state.n - ones;
  const double first = std::pow(0.5 * (1.0 + p.f + p.h), zeros) *
                       std::pow(0.5 * (1.0 - p.f - p.h), ones);
  const double second = std::pow(0.5 * (1.0 + p.f - p.h), zeros) *
                        std::pow(0.5 * (1.0 - p.f + p.h), ones);
  return 0.5 * (first + second);
}

double diagonal_weight(const EvolvedNoonState& state, std::string_view bits) {
  if (bits.size() != static_cast<std::size_t>(state.n)) {
    throw DomainError("bitstring length " + std::to_string(bits.size()) +
                      " does not match n = " + std::to_string(state.n));
  }
  int ones = 0;
  for (char b : bits) {
    if (b == '1') {
      ++ones;
    } else if (b != '0') {
      throw DomainError("bitstring must contain only '0' and '1'");
    }
  }
  return diagonal_weight(state, ones);
}

double diagonal_weight_at(const EvolvedNoonState& state, std::uint64_t index) {
  if (state.n < 64 && index >> state.n) throw DomainError("basis index out of range");
  return diagonal_weight(state, std::popcount(index));
}

DensityMatrix dense_density(const EvolvedNoonState& state) {
  require_dense(state.n);
  const NoonTerms t = assemble_terms(state);
  const Sparse sum = t.head + t.tail + t.raise + t.lower;
  return DensityMatrix(Matrix(sum));
}

Matrix dense_phase_derivative(const EvolvedNoonState& state) {
  require_dense(state.n);
  // The phase enters only through e^{+-i n phi} on the coherence terms.
  const NoonTerms t = assemble_terms(state);
  const Sparse d = (t.raise - t.lower) * cplx(0.0, state.n);
  return Matrix(d);
}

}  // namespace noonqfi
