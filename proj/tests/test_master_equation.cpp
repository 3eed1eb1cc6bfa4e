#include <cmath>
#include <limits>

#include "doctest.h"
#include "noonqfi/errors.hpp"
#include "noonqfi/master_equation.hpp"
#include "test_support.hpp"

using namespace noonqfi;
using noonqfi::testing::lorentzian_first_zero;
using noonqfi::testing::uniform_grid;

namespace {

DensityMatrix pure(const Eigen::VectorXcd& psi) { return DensityMatrix(psi * psi.adjoint()); }

Eigen::VectorXcd ket(int dim, int index) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(index) = 1.0;
  return v;
}

LindbladRealization constant_rate(const std::string& label, const Matrix2& op, double rate) {
  return {{{label, op, [rate](double t) { return DecayRateSample{t, rate, false}; }}}};
}

}  // namespace

TEST_CASE("dissipator basics") {
  const LindbladRealization damp = constant_rate("sigma_-", pauli::lowering(), 1.0);
  const Matrix excited = pure(ket(2, 1)).matrix();
  const Matrix d = lindblad_rhs(excited, 0.0, damp);
  CHECK(d(1, 1).real() == doctest::Approx(-1.0));
  CHECK(d(0, 0).real() == doctest::Approx(1.0));

  // Unital in this case: the maximally mixed pair is a fixed point.
  const LindbladRealization deph = lindblad_realization(Dephasing{1.3});
  const Matrix mixed = Matrix::Identity(4, 4) / 4.0;
  CHECK(lindblad_rhs(mixed, 0.5, deph).norm() < 1e-15);

  const LindbladRealization depol = lindblad_realization(Depolarization{1.0, 1.0});
  Eigen::VectorXcd psi(4);
  psi << 0.6, cplx(0.0, 0.48), 0.0, 0.64;
  const Matrix out = lindblad_rhs(pure(psi).matrix(), 0.2, depol);
  CHECK(std::abs(out.trace()) < 1e-14);
  CHECK(hermiticity_residual(out) < 1e-14);

  CHECK_THROWS_AS(lindblad_rhs(Matrix::Identity(3, 3), 0.0, deph), DomainError);
}

TEST_CASE("realization coverage") {
  CHECK(has_lindblad_realization(Dephasing{1.0}));
  CHECK(has_lindblad_realization(SpontaneousEmission{1.0, 1.0}));
  CHECK(has_lindblad_realization(Depolarization{1.0, 1.0}));
  CHECK(has_lindblad_realization(LorentzianReservoir{1.0, 0.1, 0.0}));
  CHECK_FALSE(has_lindblad_realization(GeneralizedAmplitudeDamping{1.0, 1.0}));
  CHECK_THROWS_AS(lindblad_realization(GeneralizedAmplitudeDamping{1.0, 1.0}), UnsupportedError);
}

TEST_CASE("zero rates leave the state unchanged") {
  Eigen::VectorXcd psi(2);
  psi << 0.8, cplx(0.36, 0.48);
  const Trajectory traj = integrate(pure(psi), lindblad_realization(Dephasing{0.0}), uniform_grid(5.0, 51));
  for (const DensityMatrix& s : traj.states) CHECK((s.matrix() - pure(psi).matrix()).norm() < 1e-14);
}

TEST_CASE("pure dephasing matches the analytic coherence decay") {
  const double gamma1 = 0.7;
  Eigen::VectorXcd plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const std::vector<double> grid = uniform_grid(4.0, 401);
  const Trajectory traj = integrate(pure(plus), lindblad_realization(Dephasing{gamma1}), grid);
  REQUIRE(traj.states.size() == grid.size());
  CHECK(traj.step == doctest::Approx(0.01 / 4));
  CHECK(traj.max_trace_drift < 1e-14);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(std::abs(traj.states[k](0, 1).real() - 0.5 * std::exp(-gamma1 * grid[k])) < 1e-8);
  }
}

TEST_CASE("weak-coupling excited population follows h") {
  const LorentzianReservoir m{1.0, 3.0, 0.0};
  const std::vector<double> grid = uniform_grid(10.0, 2001);
  const Trajectory traj = integrate(pure(ket(2, 1)), lindblad_realization(m), grid);
  for (std::size_t k = 0; k < grid.size(); k += 50) {
    CHECK(std::abs(traj.states[k](1, 1).real() - eval_params(m, grid[k]).h) < 1e-6);
  }
}

TEST_CASE("integrated maps reproduce the closed-form triples") {
  const std::vector<double> grid = uniform_grid(5.0, 1001);
  CHECK(map_equivalence_check(Dephasing{1.0}, grid).max_deviation <= 1e-6);
  CHECK(map_equivalence_check(SpontaneousEmission{0.5, 1.0}, grid).max_deviation <= 1e-6);
  CHECK(map_equivalence_check(SpontaneousEmission{1.0, 1.0}, grid).max_deviation <= 1e-6);
  CHECK(map_equivalence_check(Depolarization{1.0, 1.0}, grid).max_deviation <= 1e-6);
  CHECK(map_equivalence_check(Depolarization{2.0, 1.0}, grid).max_deviation <= 1e-6);
  CHECK(map_equivalence_check(LorentzianReservoir{1.0, 3.0, 0.0}, uniform_grid(10.0, 2001)).max_deviation <= 1e-5);

  const LorentzianReservoir strong{1.0, 0.1, 0.0};
  const double t_stop = 0.9 * lorentzian_first_zero(strong);
  const EquivalenceReport r = map_equivalence_check(strong, uniform_grid(t_stop, 4001));
  CHECK(r.max_deviation <= 1e-5);
  CHECK(r.worst_time <= t_stop);
}

TEST_CASE("RK4 error shrinks at least quadratically under refinement") {
  const LorentzianReservoir m{1.0, 3.0, 0.0};
  const std::vector<double> grid = uniform_grid(5.0, 51);
  const double e1 = map_equivalence_check(m, grid, 1).max_deviation;
  const double e2 = map_equivalence_check(m, grid, 2).max_deviation;
  const double e4 = map_equivalence_check(m, grid, 4).max_deviation;
  CHECK(e1 > e2);
  CHECK(e2 > e4);
  CHECK(std::log2(e1 / e2) >= 2.0);
  CHECK(std::log2(e2 / e4) >= 2.0);
}

TEST_CASE("integrating the two-photon state matches the closed-form density") {
  const std::vector<ChannelModel> models = {Dephasing{1.0}, SpontaneousEmission{1.0, 1.0},
                                            Depolarization{1.0, 1.0}, LorentzianReservoir{1.0, 3.0, 0.0}};
  const std::vector<double> grid = uniform_grid(3.0, 601);
  for (const ChannelModel& m : models) {
    const double phi = 0.37;
    const Trajectory traj = integrate(dense_density(evolve(2, phi, eval_params(m, 0.0))), lindblad_realization(m), grid);
    for (std::size_t k = 0; k < grid.size(); k += 100) {
      const Matrix expected = dense_density(evolve(2, phi, eval_params(m, grid[k]))).matrix();
      CHECK((traj.states[k].matrix() - expected).cwiseAbs().maxCoeff() < 1e-7);
    }
  }
}

TEST_CASE("integration error paths") {
  const LorentzianReservoir strong{1.0, 0.1, 0.0};
  const double t_star = lorentzian_first_zero(strong);
  CHECK_THROWS_AS(lindblad_rhs(Matrix::Identity(2, 2) / 2.0, t_star, lindblad_realization(strong)), PoleError);
  try {
    lindblad_rhs(Matrix::Identity(2, 2) / 2.0, t_star, lindblad_realization(strong));
  } catch (const PoleError& e) {
    CHECK(e.time() == doctest::Approx(t_star));
  }

  const LindbladRealization broken =
      constant_rate("sigma_-", pauli::lowering(), std::numeric_limits<double>::quiet_NaN());
  CHECK_THROWS_AS(integrate(pure(ket(2, 1)), broken, uniform_grid(1.0, 11)), IntegrationError);

  // Rate blowing up past the drift limit.
  const LindbladRealization wild = {{{"sigma_-", pauli::lowering() * 1e4,
                                      [](double t) { return DecayRateSample{t, 1e6, false}; }}}};
  CHECK_THROWS_AS(integrate(pure(ket(2, 1)), wild, uniform_grid(1.0, 3), 1), IntegrationError);

  const LindbladRealization deph = lindblad_realization(Dephasing{1.0});
  CHECK_THROWS_AS(integrate(pure(ket(32, 0)), deph, uniform_grid(1.0, 3)), UnsupportedError);
  CHECK_THROWS_AS(integrate(pure(ket(2, 0)), deph, {0.5, 1.0}), DomainError);
  CHECK_THROWS_AS(integrate(pure(ket(2, 0)), deph, {0.0, 1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(integrate(pure(ket(2, 0)), deph, {0.0, 1.0}, 0), DomainError);
}
