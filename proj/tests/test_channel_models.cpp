#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "noonqfi/channel_models.hpp"
#include "noonqfi/errors.hpp"
#include "test_support.hpp"

using namespace noonqfi;
using noonqfi::testing::representative_models;
using noonqfi::testing::uniform_grid;

namespace {

std::vector<double> choi_spectrum(const ChannelParams& p) {
  Eigen::SelfAdjointEigenSolver<Matrix4> es(choi(p).matrix, Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + 4);
  std::sort(ev.rbegin(), ev.rend());
  return ev;
}

// Bisection on the sign of the strong-coupling amplitude bracket
// cos(x) + (lambda/|d|) sin(x), x = |d| t / 2.
double bisect_bracket_zero(const LorentzianReservoir& m, double lo, double hi) {
  const double d = std::sqrt(2.0 * m.gamma0 * m.lambda_w - m.lambda_w * m.lambda_w);
  auto bracket = [&](double t) {
    return std::cos(0.5 * d * t) + m.lambda_w / d * std::sin(0.5 * d * t);
  };
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (bracket(lo) * bracket(mid) <= 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("identity map at t = 0 for every family") {
  for (const ChannelModel& m : representative_models()) {
    const ChannelParams p = eval_params(m, 0.0);
    CHECK(p.f == 0.0);
    CHECK(p.h == 1.0);
    CHECK(p.g == 1.0);
  }
  CHECK(eval_params(GeneralizedAmplitudeDamping{2.0, 0.1}, 0.0).f == 0.0);
}

TEST_CASE("dephasing halves coherence at t = ln 2") {
  const ChannelParams p = eval_params(Dephasing{1.0}, std::log(2.0));
  CHECK(p.f == 0.0);
  CHECK(p.h == 1.0);
  CHECK(p.g == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("printed Eq-5 forms for depolarization and spontaneous emission") {
  const double t = 0.7;
  const ChannelParams dep = eval_params(Depolarization{1.2, 0.6}, t);
  CHECK(dep.f == 0.0);
  CHECK(dep.h == doctest::Approx(std::exp(-2.0 * 0.6 * t / 3.0)));
  CHECK(dep.g == doctest::Approx(std::exp(-2.0 * 1.2 * t / 3.0)));

  const ChannelParams se = eval_params(SpontaneousEmission{0.9, 1.3}, t);
  CHECK(se.f == doctest::Approx(1.0 - std::exp(-1.3 * t)));
  CHECK(se.h == doctest::Approx(std::exp(-1.3 * t)));
  CHECK(se.g == doctest::Approx(std::exp(-0.9 * t)));
}

TEST_CASE("spontaneous emission relaxes to the ground state") {
  const ChannelParams p = eval_params(SpontaneousEmission{1.0, 1.0}, 60.0);
  CHECK(p.f == doctest::Approx(1.0));
  CHECK(p.h < 1e-25);
  CHECK(p.g < 1e-25);
}

TEST_CASE("strong-coupling amplitude vanishes at the first bracket root") {
  const LorentzianReservoir m{1.0, 0.1, 0.0};
  const double closed = noonqfi::testing::lorentzian_first_zero(m);
  const double bisected = bisect_bracket_zero(m, 0.0 + 1e-9, closed + 1.0);
  CHECK(closed == doctest::Approx(bisected).epsilon(1e-12));
  const ChannelParams p = eval_params(m, bisected);
  CHECK(p.h < 1e-10);
  CHECK(p.f == doctest::Approx(1.0));
  CHECK(decay_rate(m, bisected).near_pole);
}

TEST_CASE("GAD drift term is the real reconstruction") {
  const GeneralizedAmplitudeDamping m{1.0, 10.0};
  const double t = 0.37;
  const ChannelParams p = eval_params(m, t);
  CHECK(p.f == doctest::Approx(-std::cos(10.0 * t) * (1.0 - std::exp(-t))));
  CHECK(p.h == doctest::Approx(std::exp(-t)));
  CHECK(p.g == doctest::Approx(std::exp(-0.5 * t)));
}

TEST_CASE("negative time is rejected") {
  CHECK_THROWS_AS(eval_params(Dephasing{1.0}, -1e-3), DomainError);
  CHECK_THROWS_AS(decay_rate(LorentzianReservoir{1.0, 3.0, 0.0}, -1.0), DomainError);
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(validate_model(Dephasing{-1.0}), DomainError);
  CHECK_THROWS_AS(validate_model(LorentzianReservoir{1.0, 0.0, 0.0}), DomainError);
  CHECK_NOTHROW(validate_model(SpontaneousEmission{0.1, 1.0}));
  CHECK_FALSE(satisfies_cp_constraint(SpontaneousEmission{0.1, 1.0}));
  CHECK(satisfies_cp_constraint(SpontaneousEmission{0.5, 1.0}));
  CHECK(family_name(GeneralizedAmplitudeDamping{}) == "gad");
}

TEST_CASE("decay rate examples") {
  const LorentzianReservoir weak{1.0, 3.0, 0.0};
  CHECK(decay_rate(weak, 0.0).gamma == 0.0);
  CHECK(decay_rate(weak, 50.0).gamma == doctest::Approx(6.0 / (3.0 + std::sqrt(3.0))).epsilon(1e-6));
  CHECK_FALSE(decay_rate(weak, 50.0).near_pole);

  const LorentzianReservoir strong{1.0, 0.1, 0.0};
  bool negative = false;
  for (double t : uniform_grid(50.0, 50001)) {
    const DecayRateSample s = decay_rate(strong, t);
    if (!s.near_pole && s.gamma < 0.0) negative = true;
  }
  CHECK(negative);
}

TEST_CASE("decay rate at the critical width is finite") {
  const LorentzianReservoir critical{1.0, 2.0, 0.0};
  const double t = 1.5;
  // d = 0 limit: 2 gamma0 lambda (t/2) / (1 + lambda t / 2).
  CHECK(decay_rate(critical, t).gamma == doctest::Approx(2.0 * 2.0 * 0.75 / (1.0 + 1.5)));
  CHECK(eval_params(critical, t).h == doctest::Approx(std::exp(-2.0 * t) * std::pow(1.0 + 1.5, 2)));
}

TEST_CASE("weak coupling has non-negative rates, strong coupling changes sign") {
  const LorentzianReservoir weak{1.0, 3.0, 0.0};
  const LorentzianReservoir strong{1.0, 0.1, 0.0};
  bool pos = false, neg = false;
  for (double t : uniform_grid(50.0, 50001)) {
    CHECK(decay_rate(weak, t).gamma >= 0.0);
    const DecayRateSample s = decay_rate(strong, t);
    if (s.near_pole) continue;
    pos = pos || s.gamma > 0.0;
    neg = neg || s.gamma < 0.0;
  }
  CHECK(pos);
  CHECK(neg);
}

TEST_CASE("decay rate equals -2 d/dt ln g away from poles") {
  const double dt = 1e-5;
  for (const LorentzianReservoir m : {LorentzianReservoir{1.0, 3.0, 0.0},
                                      LorentzianReservoir{1.0, 0.1, 0.0},
                                      LorentzianReservoir{0.5, 2.0, 0.0}}) {
    double worst = 0.0;
    for (double t : uniform_grid(20.0, 401)) {
      if (t < dt) continue;
      const double gm = eval_params(m, t - dt).g;
      const double gp = eval_params(m, t + dt).g;
      const DecayRateSample s = decay_rate(m, t);
      // Skip the neighbourhood of h = 0 where ln g is singular.
      if (s.near_pole || std::min(gm, gp) < 1e-3) continue;
      const double fd = -2.0 * (std::log(gp) - std::log(gm)) / (2.0 * dt);
      worst = std::max(worst, std::abs(fd - s.gamma) / std::max(1.0, std::abs(s.gamma)));
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("Lorentzian spectral density") {
  const LorentzianReservoir m{1.0, 2.0, 5.0};
  CHECK(spectral_density(m, 5.0) == doctest::Approx(1.0 / M_PI));
  CHECK(spectral_density(m, 5.0 + 2.0) == doctest::Approx(0.5 / M_PI));
  CHECK(spectral_density(m, 5.0 - 2.0) == doctest::Approx(0.5 / M_PI));
  CHECK(spectral_density(m, 1e9) < 1e-17);
  CHECK(spectral_density(m, -1e9) < 1e-17);
  CHECK(spectral_density(m, 0.3) > 0.0);
}

TEST_CASE("Choi matrix spectra") {
  const auto id = choi_spectrum({0.0, 1.0, 1.0, 0.0});
  CHECK(id[0] == doctest::Approx(2.0));
  for (int k = 1; k < 4; ++k) CHECK(std::abs(id[k]) < 1e-14);

  const double g = 0.35;
  // Hand block structure: {|00>,|11>} block [[1, g], [g, 1]], the rest zero.
  const auto deph = choi_spectrum({0.0, 1.0, g, 0.0});
  CHECK(deph[0] == doctest::Approx(1.0 + g));
  CHECK(deph[1] == doctest::Approx(1.0 - g));
  CHECK(std::abs(deph[2]) < 1e-14);
  CHECK(std::abs(deph[3]) < 1e-14);

  CHECK(choi_spectrum({0.0, 1.0, 1.2, 0.0})[3] < 0.0);
  CHECK(choi_spectrum({0.1, 0.5, 1.01, 0.0})[3] < 0.0);
}

TEST_CASE("Choi matrix is Hermitian with trace 2") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const ChoiMatrix c = choi({u(rng), u(rng), std::abs(u(rng)), 0.0});
    CHECK((c.matrix - c.matrix.adjoint()).norm() < 1e-12);
    CHECK(std::abs(c.matrix.trace() - cplx(2.0)) < 1e-12);
  }
}

TEST_CASE("complete positivity examples") {
  for (double t : uniform_grid(10.0, 101)) {
    CHECK(is_completely_positive(eval_params(Dephasing{3.0}, t), 1e-9).completely_positive);
  }

  const SpontaneousEmission bad{0.25, 1.0};  // gamma1 = gamma2 / 4
  bool violated = false;
  double worst = 0.0;
  for (double t : uniform_grid(10.0, 1001)) {
    const CpCheck cp = is_completely_positive(eval_params(bad, t), 1e-9);
    violated = violated || !cp.completely_positive;
    worst = std::min(worst, cp.min_eigenvalue);
  }
  CHECK(violated);
  CHECK(worst < -1e-3);

  for (double t : uniform_grid(20.0, 20001)) {
    CHECK(is_completely_positive(eval_params(GeneralizedAmplitudeDamping{1.0, 10.0}, t), 1e-9)
              .completely_positive);
  }
  CHECK_THROWS_AS(is_completely_positive({0.0, 1.0, 1.0, 0.0}, 0.0), DomainError);
}

TEST_CASE("every CP-valid family stays CP on a fine grid") {
  for (const ChannelModel& m : representative_models()) {
    INFO(family_name(m));
    double worst = 1.0;
    bool h_in_range = true, g_in_range = true, pauli_bound = true;
    for (double t : uniform_grid(50.0, 50001)) {
      const ChannelParams p = eval_params(m, t);
      const CpCheck cp = is_completely_positive(p, 1e-9);
      worst = std::min(worst, cp.min_eigenvalue);
      h_in_range = h_in_range && p.h >= 0.0 && p.h <= 1.0;
      g_in_range = g_in_range && p.g >= 0.0 && p.g <= 1.0;
      if (cp.completely_positive) pauli_bound = pauli_bound && std::abs(p.f) + std::abs(p.h) <= 1.0 + 1e-12;
    }
    CHECK(worst >= -1e-9);
    CHECK(h_in_range);
    CHECK(g_in_range);
    CHECK(pauli_bound);
  }
}

TEST_CASE("Lorentzian coherence is the square root of the population factor") {
  for (const LorentzianReservoir m : {LorentzianReservoir{1.0, 3.0, 0.0},
                                      LorentzianReservoir{1.0, 0.1, 0.0}}) {
    for (double t : uniform_grid(50.0, 50001)) {
      const ChannelParams p = eval_params(m, t);
      REQUIRE(p.h >= 0.0);
      REQUIRE(p.h <= 1.0);
      REQUIRE(std::abs(p.g - std::sqrt(p.h)) < 1e-15);
      REQUIRE(std::abs(p.f - (1.0 - p.h)) < 1e-15);
    }
  }
}

TEST_CASE("weak-coupling asymptotic branch is continuous") {
  const LorentzianReservoir m{1.0, 3.0, 0.0};
  const double d = std::sqrt(3.0);
  const double t_switch = 40.0 / d;
  const double below = eval_params(m, t_switch * (1 - 1e-12)).h;
  const double above = eval_params(m, t_switch * (1 + 1e-12)).h;
  CHECK(above == doctest::Approx(below).epsilon(1e-9));
  CHECK(std::isfinite(eval_params(m, 5000.0).h));
  CHECK(decay_rate(m, 5000.0).gamma == doctest::Approx(6.0 / (3.0 + d)));
}
