#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "noonqfi/channel_models.hpp"
#include "noonqfi/linalg.hpp"
#include "noonqfi/noon_state.hpp"

namespace noonqfi {

/// One dissipator channel gamma(t) (A rho A^dag - {A^dag A, rho}/2), applied
/// independently to every qubit of the register.
struct LindbladTerm {
  std::string label;
  Matrix2 op;
  std::function<DecayRateSample(double)> rate;
};

/// Interaction-picture realization (H = 0) of a channel family.
struct LindbladRealization {
  std::vector<LindbladTerm> terms;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  double step = 0.0;  // smallest RK4 substep used
  double max_trace_drift = 0.0;
  double max_hermiticity_residual = 0.0;
};

struct EquivalenceReport {
  double max_deviation = 0.0;
  double max_f_deviation = 0.0;
  double max_h_deviation = 0.0;
  double max_g_deviation = 0.0;
  double worst_time = 0.0;
};

inline constexpr double kTraceDriftLimit = 1e-6;
inline constexpr int kDefaultSubsteps = 4;
inline constexpr int kMaxIntegratedQubits = 4;

/// Rate-convention ledger:
///   dephasing        sigma_z at gamma1/2
///   spontaneous      sigma_- at gamma2, sigma_z at (gamma1 - gamma2/2)/2
///   depolarization   sigma_x, sigma_y at gamma2/6, sigma_z at gamma1/3 - gamma2/6
///   lorentzian       sigma_- at gamma(t)
/// Generalized amplitude damping has no realization: UnsupportedError.
LindbladRealization lindblad_realization(const ChannelModel& model);

bool has_lindblad_realization(const ChannelModel& model);

/// Throws PoleError if any rate is pole-flagged at t.
Matrix lindblad_rhs(const Matrix& rho, double t, const LindbladRealization& real);

/// Classical RK4 with `substeps` equal steps per grid interval. No trace
/// renormalization; drift beyond kTraceDriftLimit raises IntegrationError.
Trajectory integrate(const DensityMatrix& rho0, const LindbladRealization& real,
                     const std::vector<double>& grid, int substeps = kDefaultSubsteps);

/// Integrates |0>, |1>, |+>, |+i>, rebuilds (f, h, g) at each grid time and
/// compares against eval_params.
EquivalenceReport map_equivalence_check(const ChannelModel& model,
                                        const std::vector<double>& grid,
                                        int substeps = kDefaultSubsteps);

}  // namespace noonqfi
