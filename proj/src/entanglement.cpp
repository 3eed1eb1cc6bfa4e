#include "noonqfi/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "noonqfi/errors.hpp"

namespace noonqfi {

double concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw DomainError("concurrence requires a 4x4 density matrix");

  // Wootters' tau_ij = <v_i|sigma_y x sigma_y|v_j*> over subnormalized
  // eigenvectors v_i = sqrt(p_i)|psi_i>; its singular values are the square
  // roots of the eigenvalues of rho (sigma_y x sigma_y) rho* (sigma_y x sigma_y).
  Eigen::SelfAdjointEigenSolver<Matrix4> es(Matrix4(rho.matrix()));
  Matrix4 W = es.eigenvectors();
  for (int k = 0; k < 4; ++k) W.col(k) *= std::sqrt(std::max(0.0, es.eigenvalues()(k)));

  const Matrix4 yy = kron(pauli::y(), pauli::y());
  const Matrix4 tau = W.transpose() * yy * W;
  Eigen::JacobiSVD<Matrix4> svd(tau);
  const Eigen::Vector4d s = svd.singularValues();  // descending
  return std::max(0.0, s(0) - s(1) - s(2) - s(3));
}

double concurrence_noon(const EvolvedNoonState& state) {
  if (state.n != 2) throw UnsupportedError("closed-form concurrence requires n = 2");
  const double p01 = diagonal_weight(state, 1);  // p01 = p10
  return std::max(0.0, 2.0 * (state.c - p01));
}

ConcurrenceSeries sample_concurrence(const ChannelModel& model, const std::vector<double>& grid,
                                     int refine) {
  if (refine < 1) throw DomainError("refinement factor must be at least 1");
  auto C = [&](double t) { return concurrence_noon(evolve(2, 0.0, eval_params(model, t))); };

  std::vector<double> base(grid.size());
  std::transform(grid.begin(), grid.end(), base.begin(), C);

  ConcurrenceSeries out;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out.t.push_back(grid[k]);
    out.C.push_back(base[k]);
    if (k + 1 == grid.size() || refine == 1) continue;
    // Exactly one endpoint at zero: C has a kink inside this interval.
    const bool touches_zero = (base[k] == 0.0) != (base[k + 1] == 0.0);
    if (!touches_zero) continue;
    const double step = (grid[k + 1] - grid[k]) / refine;
    for (int r = 1; r < refine; ++r) {
      const double t = grid[k] + r * step;
      out.t.push_back(t);
      out.C.push_back(C(t));
    }
  }
  return out;
}

NmMeasure nm_entanglement_measure(const ConcurrenceSeries& series) {
  if (series.t.size() != series.C.size()) throw DomainError("series length mismatch");
  if (series.t.size() < 2) throw DomainError("series needs at least two samples");
  for (std::size_t k = 1; k < series.t.size(); ++k) {
    if (!(series.t[k] > series.t[k - 1])) {
      throw DomainError("series times must be strictly increasing");
    }
  }
  NmMeasure m;
  m.delta_E = series.C.back() - series.C.front();
  for (std::size_t k = 1; k < series.C.size(); ++k) {
    m.total_variation += std::abs(series.C[k] - series.C[k - 1]);
  }
  m.value = m.delta_E + m.total_variation;
  return m;
}

std::vector<Interval> nm_qfi_witness(const std::vector<FlowSample>& flow) {
  std::vector<Interval> out;
  bool open = false;
  for (const FlowSample& s : flow) {
    if (s.I > kFlowBackTolerance) {
      if (!open) out.push_back({s.t, s.t});
      out.back().t_end = s.t;
      open = true;
    } else {
      open = false;
    }
  }
  return out;
}

}  // namespace noonqfi
