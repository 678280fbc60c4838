#include "dmgrad/signal_model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dmgrad/errors.hpp"
#include "dmgrad/interrogation_mode.hpp"

namespace dmgrad {

namespace {

void check_amplitude_inputs(double eps_bar, double delta_omega, double tau_l) {
  if (!(eps_bar >= 0.0)) throw DomainError("coupling eps_bar must be non-negative");
  if (!(delta_omega >= 0.0)) throw DomainError("delta_omega must be non-negative");
  if (!(tau_l >= 0.0)) throw DomainError("propagation delay tau_L must be non-negative");
}

double mode_at(const DmWave& wave, const PulseScheme& scheme) {
  return mode_value<double>(scheme.variant(), wave.omega() * scheme.interrogation_time(), scheme.diamonds());
}

}  // namespace

AtomTransition::AtomTransition(double omega_atom) : omega_atom_(omega_atom) {
  if (!(omega_atom > 0.0) || !std::isfinite(omega_atom)) {
    throw DomainError("atomic transition frequency must be positive");
  }
}

double delta_omega(const AtomTransition& transition, const DmWave& wave, const PhysicalConstants& k) {
  const double rest_energy = k.planck_mass() * k.c() * k.c();
  const double lp = k.planck_length();
  return transition.omega_atom() * rest_energy / (k.hbar() * wave.omega()) *
         std::sqrt(8.0 * std::numbers::pi * wave.rho_dm() * lp * lp * lp / rest_energy);
}

SignalAmplitude signal_amplitude_exact(double eps_bar, double delta_omega, const DmWave& wave, double tau_l,
                                       const PulseScheme& scheme) {
  check_amplitude_inputs(eps_bar, delta_omega, tau_l);
  const double omega = wave.omega();
  const double value =
      eps_bar * 8.0 * delta_omega / omega * std::abs(std::sin(0.5 * omega * tau_l) * mode_at(wave, scheme));
  return {value, SignalRegime::exact};
}

SignalAmplitude signal_amplitude_lmt(double eps_bar, double delta_omega, const DmWave& wave, double tau_l,
                                     const PulseScheme& scheme) {
  check_amplitude_inputs(eps_bar, delta_omega, tau_l);
  const double omega_tau = wave.omega() * tau_l;
  if (!(omega_tau < small_delay_limit)) {
    std::ostringstream msg;
    msg << "small-delay LMT regime requires omega*tau_L < " << small_delay_limit << ", got " << omega_tau;
    throw DomainError(msg.str());
  }
  const double value =
      eps_bar * 4.0 * delta_omega * tau_l * scheme.momentum_transfers() * std::abs(mode_at(wave, scheme));
  return {value, SignalRegime::small_delay_lmt};
}

}  // namespace dmgrad
