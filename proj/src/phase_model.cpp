#include "dmgrad/phase_model.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dmgrad/errors.hpp"

namespace dmgrad {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double small_angle = 1e-6;

// sin²(ωT/2)/ω, with the series used once ωT drops below small_angle.
template <class Real>
Real half_angle_weight(Real omega, Real t) {
  const Real x = omega * t;
  if (x < Real(small_angle)) {
    return omega * t * t * Real(0.25) * (Real(1) - x * x / Real(12));
  }
  const Real s = std::sin(Real(0.5) * x);
  return s * s / omega;
}

// Σ_q (∓1)^(q-1) of the single-diamond phase with ε̄δΩ = 1; the diamond
// identity 2 sin(a + ωT) − sin a − sin(a + 2ωT) = 4 sin²(ωT/2) sin(a + ωT)
// is applied term by term.
template <class Real>
Real unit_multi_diamond(const PulseScheme& scheme, Real t0, Real omega, Real phi) {
  const Real t = scheme.interrogation_time();
  const Real weight = Real(4) * half_angle_weight(omega, t);
  Real sum = 0;
  for (int q = 1; q <= scheme.diamonds(); ++q) {
    const Real start = t0 + Real(2 * (q - 1)) * t;
    sum -= Real(diamond_sign(scheme.variant(), q)) * weight * std::sin(omega * (start + t) + phi);
  }
  return sum;
}

void require_non_negative(double value, const char* name) {
  if (!(value >= 0.0)) throw DomainError(std::string(name) + " must be non-negative");
}

}  // namespace

DmWave::DmWave(double omega, double phi, double rho_dm) : omega_(omega), phi_(0.0), rho_dm_(rho_dm) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("DM frequency omega must be positive");
  require_non_negative(rho_dm, "DM energy density");
  if (!std::isfinite(phi)) throw DomainError("DM phase must be finite");
  phi_ = std::fmod(phi, two_pi);
  if (phi_ < 0.0) phi_ += two_pi;
  if (phi_ >= two_pi) phi_ = 0.0;
}

double single_diamond_phase(const DiamondPhaseInput& in, const DmWave& wave) {
  if (!(in.interrogation_time > 0.0)) throw DomainError("interrogation time T must be positive");
  require_non_negative(in.eps_bar, "coupling eps_bar");
  require_non_negative(in.delta_omega, "delta_omega");
  if (in.eps_bar == 0.0 || in.delta_omega == 0.0) return 0.0;

  const double omega = wave.omega();
  const double mid = omega * (in.t0 + in.interrogation_time) + wave.phi();
  return -in.eps_bar * in.delta_omega * 4.0 * half_angle_weight(omega, in.interrogation_time) *
         std::sin(mid);
}

double multi_diamond_phase(const PulseScheme& scheme, double t0, const DmWave& wave, double eps_bar,
                           double delta_omega) {
  const double t = scheme.interrogation_time();
  DiamondPhaseInput in{t0, t, eps_bar, delta_omega};
  double sum = 0.0;
  for (int q = 1; q <= scheme.diamonds(); ++q) {
    in.t0 = t0 + 2.0 * (q - 1) * t;
    sum += diamond_sign(scheme.variant(), q) * single_diamond_phase(in, wave);
  }
  return sum;
}

double differential_phase(const PulseScheme& scheme, double t0, double tau_l, const DmWave& wave,
                          double eps_bar, double delta_omega) {
  require_non_negative(tau_l, "propagation delay tau_L");
  return multi_diamond_phase(scheme, t0 + tau_l, wave, eps_bar, delta_omega) -
         multi_diamond_phase(scheme, t0, wave, eps_bar, delta_omega);
}

namespace {

// Absolute uncertainty of a mean square m of (ω δΦ / ε̄δΩ)² from rounding in
// δΦ, which sums 2Q diamond terms bounded by 4 each.
long double roundoff_floor(const PulseScheme& scheme, long double mean_square) {
  const long double noise = 64.0L * scheme.diamonds() * std::numeric_limits<long double>::epsilon();
  return 2.0L * std::sqrt(std::abs(mean_square)) * noise + noise * noise;
}

// Normalised mean square ⟨(ω δΦ / ε̄δΩ)²⟩ over φ. The integrand is summed in
// extended precision: near dead points δΦ is a cancellation of O(Q) terms.
double normalised_mean_square(const PulseScheme& scheme, double t0, double tau_l, const DmWave& wave,
                              double tolerance) {
  using Wide = long double;
  const Wide omega = wave.omega();
  const Wide start = t0;
  const Wide delayed = start + Wide(tau_l);
  const auto integrand = [&](Wide phi) {
    const Wide d = (unit_multi_diamond<Wide>(scheme, delayed, omega, phi) -
                    unit_multi_diamond<Wide>(scheme, start, omega, phi)) *
                   omega;
    return d * d;
  };
  Wide error = 0;
  Wide l1 = 0;
  const Wide integral = boost::math::quadrature::gauss_kronrod<Wide, 31>::integrate(
      integrand, Wide(0), 2 * std::numbers::pi_v<Wide>, 8, Wide(tolerance), &error, &l1);
  const Wide bound = Wide(tolerance) * l1 +
                    2 * std::numbers::pi_v<Wide> * roundoff_floor(scheme, integral / (2 * std::numbers::pi_v<Wide>));
  if (!(error <= bound)) {
    std::ostringstream msg;
    msg << "phase quadrature did not converge: achieved " << error << ", required " << bound;
    throw NumericalError(msg.str(), static_cast<double>(error));
  }
  return static_cast<double>(integral / (2 * std::numbers::pi_v<Wide>));
}

}  // namespace

double rms_signal_amplitude_oracle(const PulseScheme& scheme, double t0, double tau_l,
                                   const DmWave& wave_template, double eps_bar, double delta_omega,
                                   const RmsOracleOptions& options) {
  require_non_negative(tau_l, "propagation delay tau_L");
  require_non_negative(eps_bar, "coupling eps_bar");
  require_non_negative(delta_omega, "delta_omega");
  if (eps_bar == 0.0 || delta_omega == 0.0 || tau_l == 0.0) return 0.0;

  const double omega = wave_template.omega();
  const double ms = normalised_mean_square(scheme, t0, tau_l, wave_template, options.relative_tolerance);

  const double t0_other =
      options.t0_probe.value_or(t0 + 0.37 * scheme.interrogation_time() + 1.3 / omega);
  const double ms_other =
      normalised_mean_square(scheme, t0_other, tau_l, wave_template, options.relative_tolerance);
  const double scale = std::max(std::abs(ms), std::abs(ms_other));
  const double drift = std::abs(ms - ms_other);
  if (drift > options.t0_invariance_tolerance * scale + static_cast<double>(roundoff_floor(scheme, scale))) {
    std::ostringstream msg;
    msg << "signal amplitude depends on the start time: relative drift " << drift / scale;
    throw NumericalError(msg.str(), drift / scale);
  }

  return eps_bar * delta_omega / omega * std::sqrt(2.0 * ms);
}

}  // namespace dmgrad
