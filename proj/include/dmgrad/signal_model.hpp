#pragma once

#include "dmgrad/constants.hpp"
#include "dmgrad/phase_model.hpp"
#include "dmgrad/pulse_scheme.hpp"

namespace dmgrad {

class AtomTransition {
 public:
  /// Unperturbed transition frequency Ω [rad/s], > 0.
  explicit AtomTransition(double omega_atom);
  double omega_atom() const noexcept { return omega_atom_; }

 private:
  double omega_atom_;
};

enum class SignalRegime {
  exact,            ///< full sin(ωτ_L/2) dependence, N = 1
  small_delay_lmt,  ///< first order in ωτ_L, with N momentum transfers
};

struct SignalAmplitude {
  double value = 0.0;  ///< Φ_S [rad]
  SignalRegime regime = SignalRegime::exact;
};

/// Largest ωτ_L accepted by the small-delay form.
inline constexpr double small_delay_limit = 0.1;

/// δΩ = Ω (m_P c²/ħω) √(8π ρ_DM L_P³ / (m_P c²)).
double delta_omega(const AtomTransition& transition, const DmWave& wave, const PhysicalConstants& constants);

/// Φ_S = ε̄ (8δΩ/ω) |sin(ωτ_L/2) Q∓(ωT, Q)|. The scheme's N is ignored.
SignalAmplitude signal_amplitude_exact(double eps_bar, double delta_omega, const DmWave& wave, double tau_l,
                                       const PulseScheme& scheme);

/// Φ_S = ε̄ 4δΩ τ_L N |Q∓(ωT, Q)|. Throws DomainError when ωτ_L ≥ small_delay_limit.
SignalAmplitude signal_amplitude_lmt(double eps_bar, double delta_omega, const DmWave& wave, double tau_l,
                                     const PulseScheme& scheme);

}  // namespace dmgrad
