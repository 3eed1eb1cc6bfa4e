#include "noonqfi/master_equation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "noonqfi/errors.hpp"

namespace noonqfi {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::function<DecayRateSample(double)> constant(double gamma) {
  return [gamma](double t) { return DecayRateSample{t, gamma, false}; };
}

int qubit_count(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim || n < 1) {
    throw DomainError("density matrix dimension must be a power of two");
  }
  return n;
}

}  // namespace

LindbladRealization lindblad_realization(const ChannelModel& model) {
  validate_model(model);
  return std::visit(
      overloaded{
          [](const Dephasing& m) {
            return LindbladRealization{{{"sigma_z", pauli::z(), constant(0.5 * m.gamma1)}}};
          },
          [](const SpontaneousEmission& m) {
            return LindbladRealization{
                {{"sigma_minus", pauli::lowering(), constant(m.gamma2)},
                 {"sigma_z", pauli::z(), constant(0.5 * (m.gamma1 - 0.5 * m.gamma2))}}};
          },
          [](const Depolarization& m) {
            const double transverse = m.gamma2 / 6.0;
            return LindbladRealization{
                {{"sigma_x", pauli::x(), constant(transverse)},
                 {"sigma_y", pauli::y(), constant(transverse)},
                 {"sigma_z", pauli::z(), constant(m.gamma1 / 3.0 - transverse)}}};
          },
          [](const LorentzianReservoir& m) {
            return LindbladRealization{{{"sigma_minus", pauli::lowering(),
                                         [m](double t) { return decay_rate(m, t); }}}};
          },
          [](const GeneralizedAmplitudeDamping&) -> LindbladRealization {
            throw UnsupportedError(
                "generalized amplitude damping has no shipped Lindblad realization");
          },
      },
      model);
}

bool has_lindblad_realization(const ChannelModel& model) {
  return !std::holds_alternative<GeneralizedAmplitudeDamping>(model);
}

Matrix lindblad_rhs(const Matrix& rho, double t, const LindbladRealization& real) {
  const int n = qubit_count(rho.rows());
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const LindbladTerm& term : real.terms) {
    const DecayRateSample rate = term.rate(t);
    if (rate.near_pole) {
      throw PoleError("decay rate of " + term.label + " is at a pole", t);
    }
    if (rate.gamma == 0.0) continue;
    for (int site = 0; site < n; ++site) {
      const Matrix a = embed(term.op, site, n);
      const Matrix ad = a.adjoint();
      const Matrix ada = ad * a;
      out += rate.gamma * (a * rho * ad - 0.5 * (ada * rho + rho * ada));
    }
  }
  return out;
}

Trajectory integrate(const DensityMatrix& rho0, const LindbladRealization& real,
                     const std::vector<double>& grid, int substeps) {
  if (grid.empty() || grid.front() != 0.0) throw DomainError("time grid must start at 0");
  if (substeps < 1) throw DomainError("substeps must be at least 1");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) throw DomainError("time grid must be strictly increasing");
  }
  if (qubit_count(rho0.dim()) > kMaxIntegratedQubits) {
    throw UnsupportedError("master-equation integration limited to n <= 4");
  }

  Trajectory traj;
  traj.times = grid;
  traj.states.reserve(grid.size());
  traj.states.push_back(rho0);
  traj.step = grid.size() > 1 ? (grid[1] - grid[0]) / substeps : 0.0;

  const double trace0 = rho0.trace();
  Matrix rho = rho0.matrix();
  std::size_t step_index = 0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double h = (grid[k] - grid[k - 1]) / substeps;
    traj.step = std::min(traj.step, h);
    double t = grid[k - 1];
    for (int s = 0; s < substeps; ++s, ++step_index) {
      const Matrix k1 = lindblad_rhs(rho, t, real);
      const Matrix k2 = lindblad_rhs(rho + (0.5 * h) * k1, t + 0.5 * h, real);
      const Matrix k3 = lindblad_rhs(rho + (0.5 * h) * k2, t + 0.5 * h, real);
      const Matrix k4 = lindblad_rhs(rho + h * k3, t + h, real);
      rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t = (s + 1 == substeps) ? grid[k] : grid[k - 1] + (s + 1) * h;

      const double drift = std::abs(rho.trace().real() - trace0);
      traj.max_trace_drift = std::max(traj.max_trace_drift, drift);
      if (!(drift <= kTraceDriftLimit)) {
        throw IntegrationError("trace drift " + std::to_string(drift) + " at step " +
                                   std::to_string(step_index) + " (t = " + std::to_string(t) +
                                   ")",
                               step_index, t);
      }
    }
    traj.max_hermiticity_residual =
        std::max(traj.max_hermiticity_residual, hermiticity_residual(rho));
    traj.states.emplace_back(rho);
  }
  return traj;
}

EquivalenceReport map_equivalence_check(const ChannelModel& model,
                                        const std::vector<double>& grid, int substeps) {
  const LindbladRealization real = lindblad_realization(model);

  const cplx i(0.0, 1.0);
  Matrix ground = Matrix::Zero(2, 2);
  ground(0, 0) = 1.0;
  Matrix excited = Matrix::Zero(2, 2);
  excited(1, 1) = 1.0;
  Matrix plus = Matrix::Constant(2, 2, 0.5);
  Matrix plus_i(2, 2);
  plus_i << 0.5, -0.5 * i, 0.5 * i, 0.5;

  const Trajectory t0 = integrate(DensityMatrix(ground), real, grid, substeps);
  const Trajectory t1 = integrate(DensityMatrix(excited), real, grid, substeps);
  const Trajectory tp = integrate(DensityMatrix(plus), real, grid, substeps);
  const Trajectory tpi = integrate(DensityMatrix(plus_i), real, grid, substeps);

  auto bloch_z = [](const DensityMatrix& r) { return (r(0, 0) - r(1, 1)).real(); };

  EquivalenceReport report;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double z0 = bloch_z(t0.states[k]);
    const double z1 = bloch_z(t1.states[k]);
    const double f = 0.5 * (z0 + z1);
    const double h = 0.5 * (z0 - z1);
    // Phi(|0><1|) = g |0><1|, so rho_01 = g/2 for |+> and -i g/2 for |+i>.
    const cplx g_plus = 2.0 * tp.states[k](0, 1);
    const cplx g_plus_i = 2.0 * i * tpi.states[k](0, 1);

    const ChannelParams exact = eval_params(model, grid[k]);
    const double df = std::abs(f - exact.f);
    const double dh = std::abs(h - exact.h);
    const double dg = std::max(std::abs(g_plus - exact.g), std::abs(g_plus_i - exact.g));
    report.max_f_deviation = std::max(report.max_f_deviation, df);
    report.max_h_deviation = std::max(report.max_h_deviation, dh);
    report.max_g_deviation = std::max(report.max_g_deviation, dg);
    const double worst = std::max({df, dh, dg});
    if (worst > report.max_deviation) {
      report.max_deviation = worst;
      report.worst_time = grid[k];
    }
  }
  return report;
}

}  // namespace noonqfi
