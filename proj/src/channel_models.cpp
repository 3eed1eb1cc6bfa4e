#include "noonqfi/channel_models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "noonqfi/errors.hpp"

namespace noonqfi {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Beyond this the weak-coupling hyperbolics are evaluated in exponential
// form so that e^{-lambda t} cosh^2(dt/2) does not overflow.
constexpr double kAsymptoticArgument = 20.0;

// Amplitude G(t) = e^{-lambda t/2} (C + lambda S) and normalized rate
// bracket B = C + lambda S, where C = cosh(dt/2) and S = sinh(dt/2)/d with
// d = sqrt(lambda^2 - 2 gamma0 lambda). For imaginary d the hyperbolics
// become cos(|d|t/2) and sin(|d|t/2)/|d|; at d = 0 they reduce to 1 and t/2.
struct LorentzianKernel {
  double amplitude;  // G(t); h = G^2
  double bracket;    // B(t); pole where B = 0
  double gamma;      // 2 gamma0 lambda S / B
};

LorentzianKernel lorentzian_kernel(const LorentzianReservoir& m, double t) {
  const double lambda = m.lambda_w;
  const double disc = lambda * lambda - 2.0 * m.gamma0 * lambda;
  const double rate_scale = 2.0 * m.gamma0 * lambda;

  if (disc > 0.0) {
    const double d = std::sqrt(disc);
    const double x = 0.5 * d * t;
    if (x > kAsymptoticArgument) {
      const double r = lambda / d;
      const double amplitude = 0.5 * ((1.0 + r) * std::exp(0.5 * (d - lambda) * t) +
                                      (1.0 - r) * std::exp(-0.5 * (d + lambda) * t));
      const double th = std::tanh(x);
      // B itself is astronomically large here; only its sign matters.
      return {amplitude, std::cosh(std::min(x, 700.0)), rate_scale * th / (d + lambda * th)};
    }
    const double c = std::cosh(x);
    const double s = std::sinh(x) / d;
    const double b = c + lambda * s;
    return {std::exp(-0.5 * lambda * t) * b, b, rate_scale * s / b};
  }
  if (disc < 0.0) {
    const double d = std::sqrt(-disc);
    const double x = 0.5 * d * t;
    const double c = std::cos(x);
    const double s = std::sin(x) / d;
    const double b = c + lambda * s;
    return {std::exp(-0.5 * lambda * t) * b, b, rate_scale * s / b};
  }
  const double s = 0.5 * t;
  const double b = 1.0 + lambda * s;
  return {std::exp(-0.5 * lambda * t) * b, b, rate_scale * s / b};
}

void require_time(double t) {
  if (!(t >= 0.0)) throw DomainError("channel time must be non-negative");
}

}  // namespace

std::string family_name(const ChannelModel& model) {
  return std::visit(overloaded{
                        [](const Dephasing&) { return std::string("dephasing"); },
                        [](const Depolarization&) { return std::string("depolarization"); },
                        [](const SpontaneousEmission&) { return std::string("spontaneous"); },
                        [](const LorentzianReservoir&) { return std::string("lorentzian"); },
                        [](const GeneralizedAmplitudeDamping&) { return std::string("gad"); },
                    },
                    model);
}

void validate_model(const ChannelModel& model) {
  auto non_negative = [](double v, const char* name) {
    if (!(v >= 0.0)) throw DomainError(std::string(name) + " must be non-negative");
  };
  std::visit(overloaded{
                 [&](const Dephasing& m) { non_negative(m.gamma1, "gamma1"); },
                 [&](const Depolarization& m) {
                   non_negative(m.gamma1, "gamma1");
                   non_negative(m.gamma2, "gamma2");
                 },
                 [&](const SpontaneousEmission& m) {
                   non_negative(m.gamma1, "gamma1");
                   non_negative(m.gamma2, "gamma2");
                 },
                 [&](const LorentzianReservoir& m) {
                   non_negative(m.gamma0, "gamma0");
                   if (!(m.lambda_w > 0.0)) throw DomainError("lambda must be positive");
                 },
                 [&](const GeneralizedAmplitudeDamping& m) {
                   non_negative(m.delta, "delta");
                   if (!std::isfinite(m.omega)) throw DomainError("omega must be finite");
                 },
             },
             model);
}

bool satisfies_cp_constraint(const ChannelModel& model) {
  return std::visit(overloaded{
                        [](const Depolarization& m) { return m.gamma1 >= 0.5 * m.gamma2; },
                        [](const SpontaneousEmission& m) { return m.gamma1 >= 0.5 * m.gamma2; },
                        [](const auto&) { return true; },
                    },
                    model);
}

bool is_strong_coupling(const LorentzianReservoir& model) {
  return model.lambda_w < 2.0 * model.gamma0;
}

ChannelParams eval_params(const ChannelModel& model, double t) {
  require_time(t);
  return std::visit(
      overloaded{
          [t](const Dephasing& m) { return ChannelParams{0.0, 1.0, std::exp(-m.gamma1 * t), t}; },
          [t](const Depolarization& m) {
            return ChannelParams{0.0, std::exp(-2.0 * m.gamma2 * t / 3.0),
                                 std::exp(-2.0 * m.gamma1 * t / 3.0), t};
          },
          [t](const SpontaneousEmission& m) {
            return ChannelParams{-std::expm1(-m.gamma2 * t), std::exp(-m.gamma2 * t),
                                 std::exp(-m.gamma1 * t), t};
          },
          [t](const LorentzianReservoir& m) {
            const double amp = lorentzian_kernel(m, t).amplitude;
            const double h = amp * amp;
            return ChannelParams{1.0 - h, h, std::abs(amp), t};
          },
          [t](const GeneralizedAmplitudeDamping& m) {
            const double decayed = -std::expm1(-m.delta * t);
            return ChannelParams{-std::cos(m.omega * t) * decayed, std::exp(-m.delta * t),
                                 std::exp(-0.5 * m.delta * t), t};
          },
      },
      model);
}

DecayRateSample decay_rate(const LorentzianReservoir& model, double t, double pole_threshold) {
  require_time(t);
  const LorentzianKernel k = lorentzian_kernel(model, t);
  return {t, k.gamma, std::abs(k.bracket) < pole_threshold};
}

double spectral_density(const LorentzianReservoir& model, double omega) {
  const double lambda = model.lambda_w;
  const double detuning = model.omega0 - omega;
  return 2.0 * model.gamma0 * lambda * lambda /
         (2.0 * std::numbers::pi * (detuning * detuning + lambda * lambda));
}

ChoiMatrix choi(const ChannelParams& p) {
  // Images of the four matrix units |i><j|.
  Matrix2 img[2][2];
  img[0][0] << 0.5 * (1.0 + p.f + p.h), 0.0, 0.0, 0.5 * (1.0 - p.f - p.h);
  img[1][1] << 0.5 * (1.0 + p.f - p.h), 0.0, 0.0, 0.5 * (1.0 - p.f + p.h);
  img[0][1] << 0.0, p.g, 0.0, 0.0;
  img[1][0] << 0.0, 0.0, p.g, 0.0;

  Matrix4 c = Matrix4::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Matrix2 unit = Matrix2::Zero();
      unit(i, j) = 1.0;
      c += kron(img[i][j], unit);
    }
  }
  return {c, p};
}

CpCheck is_completely_positive(const ChannelParams& params, double tol) {
  if (!(tol > 0.0)) throw DomainError("CP tolerance must be positive");
  const ChoiMatrix c = choi(params);
  Eigen::SelfAdjointEigenSolver<Matrix4> es(c.matrix, Eigen::EigenvaluesOnly);
  const double min_ev = es.eigenvalues().minCoeff();
  return {min_ev >= -tol, min_ev};
}

}  // namespace noonqfi
