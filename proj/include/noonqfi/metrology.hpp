#pragma once

#include <string>
#include <vector>

#include "noonqfi/channel_models.hpp"
#include "noonqfi/linalg.hpp"
#include "noonqfi/noon_state.hpp"

namespace noonqfi {

enum class QfiMethod { closed_form, oracle };

struct QfiResult {
  double F = 0.0;
  double eta = 0.0;  // F / n^2
  QfiMethod method = QfiMethod::closed_form;
  bool degenerate = false;  // block trace below kBlockTraceFloor; F forced to 0
};

struct SldMatrix {
  Matrix L;
  double cutoff = 0.0;
};

enum class FlowMethod { finite_difference, structural, subflow_sum };

struct SubFlow {
  std::string label;
  double rate = 0.0;  // gamma_i(t)
  double J = 0.0;     // -Tr(rho [L, A_i]^dag [L, A_i]), summed over qubits
};

struct FlowSample {
  double t = 0.0;
  double I = 0.0;
  FlowMethod method = FlowMethod::finite_difference;
  std::vector<SubFlow> subflows;
};

struct PhaseUncertainty {
  double delta_phi = 0.0;
  bool unbounded = false;  // F <= 0: no phase information
};

struct ReferenceBounds {
  double shot_noise = 0.0;
  double heisenberg = 0.0;
};

inline constexpr double kSldCutoff = 1e-12;
inline constexpr double kBlockTraceFloor = 1e-14;
inline constexpr double kFlowStep = 1e-5;
inline constexpr int kMaxStructuralQubits = 8;
inline constexpr int kMaxSubflowQubits = 6;

/// L = 2 sum_{m,n} <m|drho|n> / (p_m + p_n) |m><n| over the eigenbasis of
/// rho, skipping pairs with p_m + p_n <= cutoff.
SldMatrix sld_oracle(const DensityMatrix& rho, const Matrix& drho, double cutoff = kSldCutoff);

/// i alpha (e^{in phi}|0..0><1..1| - h.c.), alpha = n g^n / (a_head + a_tail).
SldMatrix sld_closed_form(const EvolvedNoonState& state);

/// Scalar alpha of sld_closed_form without the dense matrix.
double sld_coefficient(const EvolvedNoonState& state);

QfiResult qfi(const EvolvedNoonState& state, QfiMethod method = QfiMethod::closed_form);

/// Closed-form F for a model at (n, t); phase-independent.
double qfi_at(const ChannelModel& model, int n, double t);

PhaseUncertainty qcrb(double F, int repetitions = 1);

ReferenceBounds reference_bounds(int n);

/// Central difference of the closed-form F; forward difference when t < dt.
FlowSample qfi_flow_fd(const ChannelModel& model, int n, double phi, double t,
                       double dt = kFlowStep);

/// 2 Tr(L d_phi d_t rho) - Tr(L^2 d_t rho) on the dense oracle.
FlowSample qfi_flow_structural(const ChannelModel& model, int n, double phi, double t,
                               double dt = kFlowStep, double dphi = kFlowStep);

/// sum_i gamma_i(t) J_i over the model's Lindblad realization.
FlowSample qfi_subflows(const ChannelModel& model, int n, double phi, double t);

}  // namespace noonqfi
