#pragma once

#include <vector>

#include "noonqfi/channel_models.hpp"
#include "noonqfi/metrology.hpp"
#include "noonqfi/noon_state.hpp"

namespace noonqfi {

struct ConcurrenceSeries {
  std::vector<double> t;
  std::vector<double> C;
};

/// Entanglement-based non-Markovianity: value = delta_E + total variation.
struct NmMeasure {
  double delta_E = 0.0;
  double total_variation = 0.0;
  double value = 0.0;
};

struct Interval {
  double t_start = 0.0;
  double t_end = 0.0;
};

inline constexpr double kFlowBackTolerance = 1e-9;

/// Wootters concurrence of a two-qubit state; DomainError unless 4x4.
double concurrence(const DensityMatrix& rho);

/// 2 max(0, c - sqrt(p01 p10)) for the n = 2 evolved N00N state.
double concurrence_noon(const EvolvedNoonState& state);

/// Concurrence of the two-photon trajectory on `grid`. With refine > 1 every
/// interval touching a zero of C is subdivided `refine` times.
ConcurrenceSeries sample_concurrence(const ChannelModel& model, const std::vector<double>& grid,
                                     int refine = 1);

NmMeasure nm_entanglement_measure(const ConcurrenceSeries& series);

/// Maximal runs of consecutive samples with I > kFlowBackTolerance.
std::vector<Interval> nm_qfi_witness(const std::vector<FlowSample>& flow);

}  // namespace noonqfi
