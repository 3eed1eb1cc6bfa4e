#pragma once

#include <string>
#include <variant>

#include "noonqfi/linalg.hpp"

namespace noonqfi {

// Single-qubit decoherence families. Rates are in units of inverse time.
//
// Naming follows the source model literally: gamma1 sets the coherence
// decay (called T1 = 1/gamma1 there) and gamma2 the population exchange
// (T2 = 1/gamma2), which is the reverse of the usual NMR convention.

struct Dephasing {
  double gamma1 = 0.0;
};

struct Depolarization {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

struct SpontaneousEmission {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

/// Zero-temperature qubit coupled to a Lorentzian cavity spectrum.
/// lambda_w is the spectral width (inverse reservoir correlation time);
/// omega0 is the line center and only enters spectral_density().
struct LorentzianReservoir {
  double gamma0 = 0.0;
  double lambda_w = 0.0;
  double omega0 = 0.0;
};

/// Finite-temperature relaxation with an oscillating excited-state weight
/// p(t) = cos^2(omega t / 2). The drift term uses the real reconstruction
/// f = -cos(omega t)(1 - e^{-delta t}); the complex factor found in the
/// original expression has no physical reading as a Bloch-z shift.
struct GeneralizedAmplitudeDamping {
  double delta = 0.0;
  double omega = 0.0;
};

using ChannelModel = std::variant<Dephasing, Depolarization, SpontaneousEmission,
                                  LorentzianReservoir, GeneralizedAmplitudeDamping>;

/// Pauli-transfer triple of a phase-covariant, trace-preserving qubit map:
///   1 -> 1 + f sigma_z,  sigma_z -> h sigma_z,  sigma_+- -> g sigma_+-.
struct ChannelParams {
  double f = 0.0;
  double h = 1.0;
  double g = 1.0;
  double t = 0.0;
};

struct ChoiMatrix {
  Matrix4 matrix;
  ChannelParams source;
};

struct DecayRateSample {
  double t = 0.0;
  double gamma = 0.0;
  bool near_pole = false;
};

struct CpCheck {
  bool completely_positive = false;
  double min_eigenvalue = 0.0;
};

inline constexpr double kPoleThreshold = 1e-8;

std::string family_name(const ChannelModel& model);

/// Throws DomainError for negative rates or a non-positive Lorentzian width.
void validate_model(const ChannelModel& model);

/// Analytic CP condition of the family's rate parameters (gamma1 >= gamma2/2
/// for the two-rate families; always true otherwise).
bool satisfies_cp_constraint(const ChannelModel& model);

/// True for models whose rates can change sign (Lorentzian strong coupling,
/// lambda < 2 gamma0).
bool is_strong_coupling(const LorentzianReservoir& model);

ChannelParams eval_params(const ChannelModel& model, double t);

DecayRateSample decay_rate(const LorentzianReservoir& model, double t,
                           double pole_threshold = kPoleThreshold);

/// Lorentzian J(omega) = 2 gamma0 lambda^2 / (2 pi ((omega0 - omega)^2 + lambda^2)).
double spectral_density(const LorentzianReservoir& model, double omega);

ChoiMatrix choi(const ChannelParams& params);

CpCheck is_completely_positive(const ChannelParams& params, double tol);

}  // namespace noonqfi
