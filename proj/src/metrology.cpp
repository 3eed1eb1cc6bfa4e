#include "noonqfi/metrology.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "noonqfi/errors.hpp"
#include "noonqfi/master_equation.hpp"

namespace noonqfi {

namespace {

constexpr double kHermitianTolerance = 1e-10;

Matrix corner_operator(const EvolvedNoonState& state, double alpha) {
  const Eigen::Index dim = Eigen::Index{1} << state.n;
  const cplx phase = std::polar(1.0, state.n * state.phi);
  Matrix L = Matrix::Zero(dim, dim);
  L(0, dim - 1) += cplx(0.0, alpha) * phase;
  L(dim - 1, 0) += cplx(0.0, -alpha) * std::conj(phase);
  return L;
}

EvolvedNoonState state_at(const ChannelModel& model, int n, double phi, double t) {
  return evolve(n, phi, eval_params(model, t));
}

// Central difference in t, forward when the stencil would leave t >= 0.
template <class F>
auto time_derivative(F&& at, double t, double dt) {
  if (t >= dt) return ((at(t + dt) - at(t - dt)) / (2.0 * dt)).eval();
  return ((at(t + dt) - at(t)) / dt).eval();
}

}  // namespace

SldMatrix sld_oracle(const DensityMatrix& rho, const Matrix& drho, double cutoff) {
  if (!(cutoff > 0.0)) throw DomainError("SLD cutoff must be positive");
  if (drho.rows() != rho.dim() || drho.cols() != rho.dim()) {
    throw DomainError("derivative dimension does not match density matrix");
  }
  const double scale = std::max(1.0, rho.matrix().norm());
  if (rho.hermiticity_residual() > kHermitianTolerance * scale) {
    throw DomainError("density matrix is not Hermitian");
  }
  if (hermiticity_residual(drho) > kHermitianTolerance * std::max(1.0, drho.norm())) {
    throw DomainError("phase derivative is not Hermitian");
  }

  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  const Eigen::VectorXd& p = es.eigenvalues();
  const Matrix& V = es.eigenvectors();
  Matrix D = V.adjoint() * drho * V;
  D = (0.5 * (D + D.adjoint())).eval();
  for (Eigen::Index m = 0; m < D.rows(); ++m) {
    for (Eigen::Index k = 0; k < D.cols(); ++k) {
      const double denom = p(m) + p(k);
      D(m, k) = denom > cutoff ? 2.0 * D(m, k) / denom : cplx(0.0);
    }
  }
  Matrix L = V * D * V.adjoint();
  return {(0.5 * (L + L.adjoint())).eval(), cutoff};
}

double sld_coefficient(const EvolvedNoonState& state) {
  const double trace = state.block_trace();
  if (!(trace > kBlockTraceFloor)) {
    throw DegenerateStateError("coherence block trace vanishes; SLD undefined");
  }
  return state.n * std::pow(state.params.g, state.n) / trace;
}

SldMatrix sld_closed_form(const EvolvedNoonState& state) {
  const double alpha = sld_coefficient(state);
  if (state.n > kMaxDenseQubits) {
    throw CapacityError("dense SLD limited to n <= " + std::to_string(kMaxDenseQubits));
  }
  return {corner_operator(state, alpha), kSldCutoff};
}

QfiResult qfi(const EvolvedNoonState& state, QfiMethod method) {
  const double n2 = static_cast<double>(state.n) * state.n;
  QfiResult r;
  r.method = method;
  if (method == QfiMethod::closed_form) {
    const double trace = state.block_trace();
    if (!(trace > kBlockTraceFloor)) {
      r.degenerate = true;
      return r;
    }
    r.F = n2 * std::pow(state.params.g, 2 * state.n) / trace;
  } else {
    if (state.n > kMaxDenseQubits) {
      throw CapacityError("oracle QFI limited to n <= " + std::to_string(kMaxDenseQubits));
    }
    const DensityMatrix rho = dense_density(state);
    const SldMatrix sld = sld_oracle(rho, dense_phase_derivative(state));
    r.F = (sld.L * sld.L * rho.matrix()).trace().real();
    r.degenerate = !(state.block_trace() > kBlockTraceFloor);
  }
  r.eta = r.F / n2;
  return r;
}

double qfi_at(const ChannelModel& model, int n, double t) {
  return qfi(state_at(model, n, 0.0, t)).F;
}

PhaseUncertainty qcrb(double F, int repetitions) {
  if (repetitions < 1) throw DomainError("repetition count must be at least 1");
  if (!(F > 0.0)) return {std::numeric_limits<double>::infinity(), true};
  return {1.0 / std::sqrt(repetitions * F), false};
}

ReferenceBounds reference_bounds(int n) {
  if (n < 1) throw DomainError("photon number must be at least 1");
  return {1.0 / std::sqrt(static_cast<double>(n)), 1.0 / n};
}

FlowSample qfi_flow_fd(const ChannelModel& model, int n, double phi, double t, double dt) {
  if (!(dt > 0.0)) throw DomainError("flow step must be positive");
  if (!(t >= 0.0)) throw DomainError("flow time must be non-negative");
  auto F = [&](double s) { return qfi(state_at(model, n, phi, s)).F; };
  const double I = t >= dt ? (F(t + dt) - F(t - dt)) / (2.0 * dt) : (F(t + dt) - F(t)) / dt;
  return {t, I, FlowMethod::finite_difference, {}};
}

FlowSample qfi_flow_structural(const ChannelModel& model, int n, double phi, double t,
                               double dt, double dphi) {
  if (n > kMaxStructuralQubits) {
    throw CapacityError("structural flow limited to n <= " +
                        std::to_string(kMaxStructuralQubits));
  }
  if (!(dt > 0.0) || !(dphi > 0.0)) throw DomainError("flow steps must be positive");

  auto rho_at = [&](double s, double ph) {
    return dense_density(state_at(model, n, ph, s)).matrix();
  };
  auto drho_dt = [&](double ph) {
    return time_derivative([&](double s) { return rho_at(s, ph); }, t, dt);
  };

  const Matrix dt_rho = drho_dt(phi);
  const Matrix dphi_dt_rho = (drho_dt(phi + dphi) - drho_dt(phi - dphi)) / (2.0 * dphi);

  const EvolvedNoonState state = state_at(model, n, phi, t);
  const DensityMatrix rho = dense_density(state);
  const Matrix L = sld_oracle(rho, dense_phase_derivative(state)).L;

  const double I =
      2.0 * (L * dphi_dt_rho).trace().real() - (L * L * dt_rho).trace().real();
  return {t, I, FlowMethod::structural, {}};
}

FlowSample qfi_subflows(const ChannelModel& model, int n, double phi, double t) {
  if (!has_lindblad_realization(model)) {
    throw UnsupportedError(family_name(model) + " has no Lindblad realization for sub-flows");
  }
  if (n > kMaxSubflowQubits) {
    throw CapacityError("sub-flows limited to n <= " + std::to_string(kMaxSubflowQubits));
  }
  const LindbladRealization real = lindblad_realization(model);

  const EvolvedNoonState state = state_at(model, n, phi, t);
  const DensityMatrix rho = dense_density(state);
  const Matrix L = sld_oracle(rho, dense_phase_derivative(state)).L;

  FlowSample out{t, 0.0, FlowMethod::subflow_sum, {}};
  for (const LindbladTerm& term : real.terms) {
    const DecayRateSample rate = term.rate(t);
    if (rate.near_pole) throw PoleError("decay rate of " + term.label + " is at a pole", t);
    double J = 0.0;
    for (int site = 0; site < n; ++site) {
      const Matrix a = embed(term.op, site, n);
      const Matrix comm = L * a - a * L;
      J -= (rho.matrix() * comm.adjoint() * comm).trace().real();
    }
    out.subflows.push_back({term.label, rate.gamma, J});
    out.I += rate.gamma * J;
  }
  return out;
}

}  // namespace noonqfi
