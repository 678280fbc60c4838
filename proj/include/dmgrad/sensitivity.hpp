#pragma once

#include <concepts>
#include <limits>
#include <string_view>
#include <variant>

#include "dmgrad/constants.hpp"
#include "dmgrad/geometry.hpp"
#include "dmgrad/phase_model.hpp"
#include "dmgrad/pulse_scheme.hpp"
#include "dmgrad/signal_model.hpp"

namespace dmgrad {

/// Signal-amplitude fluctuation ΔΦ_S fixed independently of the sequence.
struct FixedPhaseNoise {
  double delta_phi = 0.0;  ///< [rad]
};

/// Shot-noise limited differential readout: ΔΦ_S = √(2/(ν n_at)), ν = T_int/T_tot.
struct ShotNoise {
  double atom_number = 0.0;
  double integration_time = 0.0;  ///< T_int [s]
};

/// Entangled/squeezed input states: ΔΦ_S = √(2/ν) / n_at.
struct QuantumEnhancedNoise {
  double atom_number = 0.0;
  double integration_time = 0.0;
};

using NoiseModel = std::variant<FixedPhaseNoise, ShotNoise, QuantumEnhancedNoise>;

std::string_view noise_kind_name(const NoiseModel& noise) noexcept;

/// Throws DomainError unless the model parameters are admissible.
void validate(const NoiseModel& noise);

/// ν = T_int / T_tot for the shot-noise kinds; NaN for fixed noise.
double repetitions(const NoiseModel& noise, double total_duration);

/// ΔΦ_S as a function of T_tot, without the T_int ≥ T_tot check; used as an
/// objective inside optimisers.
template <std::floating_point Real>
Real phase_noise_unchecked(const NoiseModel& noise, Real total_duration) {
  if (const auto* fixed = std::get_if<FixedPhaseNoise>(&noise)) return Real(fixed->delta_phi);
  if (const auto* shot = std::get_if<ShotNoise>(&noise)) {
    return std::sqrt(Real(2) * total_duration / (Real(shot->integration_time) * Real(shot->atom_number)));
  }
  const auto& q = std::get<QuantumEnhancedNoise>(noise);
  return std::sqrt(Real(2) * total_duration / Real(q.integration_time)) / Real(q.atom_number);
}

/// ΔΦ_S for a sequence of duration T_tot. Shot-noise kinds require
/// T_int ≥ T_tot (at least one repetition).
double phase_noise(const NoiseModel& noise, double total_duration);

/// Δε̄ from Gaussian error propagation, or a dead point where |Q∓| = 0.
struct Uncertainty {
  double delta_eps = std::numeric_limits<double>::infinity();
  bool dead_point() const noexcept { return delta_eps == std::numeric_limits<double>::infinity(); }
};

/// Δε̄ = ΔΦ_S / (4 δΩ τ_L N |Q∓|).
Uncertainty uncertainty_general(double noise_phase, double delta_omega, double tau_l, int momentum_transfers,
                                double mode_value);

/// Resonant-mode detection: Δε̄ = (π/2) ΔΦ_S / (N δΩ ω τ_L T_tot), for either scheme.
double uncertainty_resonant(double noise_phase, double delta_omega, const DmWave& wave, double tau_l,
                            int momentum_transfers, double total_duration);

/// Shot-noise limit at resonance: Δε̄ = π / (√(2 n_at) N δΩ ω τ_L √(T_tot T_int)).
double uncertainty_shot_noise(double atom_number, double integration_time, double delta_omega,
                              const DmWave& wave, double tau_l, int momentum_transfers, double total_duration);

/// Resonant Δε̄ with ΔΦ_S taken from `noise` at T_tot.
double uncertainty_resonant(const NoiseModel& noise, double delta_omega, const DmWave& wave, double tau_l,
                            int momentum_transfers, double total_duration);

/// Inputs of the optimal-height closed forms.
struct BaselineSetup {
  double baseline = 0.0;    ///< B [m]
  double omega_atom = 0.0;  ///< Ω [rad/s]
  double rho_dm = 0.0;      ///< [J/m³]
  int momentum_transfers = 1;
  PhysicalConstants constants;
};

/// Optimal Δε̄ for T-independent fixed noise, h = B/3:
/// 3√(3π) ΔΦ_S/(32N) · m_P c²/(ħΩ) · L_P/R_E · √(m_E c²/(ρ_DM B³)).
double closed_form_fixed_noise(double delta_phi, const BaselineSetup& setup);

/// Shot-noise limit, h = B/5: 5/(64N) √(10π/(n_at ν)) · m_P c²/(ħΩ) · L_P/R_E · √(m_E c²/(ρ_DM B³)).
double closed_form_shot_noise(double atom_number, double repetitions, const BaselineSetup& setup);

/// Five-sigma discovery coupling for the shot-noise optimum:
/// 25/(64N) √(10π SNR/(n_at ν)) · m_P c²/(ħΩ) · L_P/R_E · √(m_E c²/(ρ_DM B³)).
double five_sigma_shot_noise(double atom_number, double repetitions, double snr, const BaselineSetup& setup);

/// Closed-form optimum for any noise model. Shot-noise kinds take ν from
/// T_int and T_tot = √(8h/g) at h = B/5, g derived from (m_E, R_E).
double closed_form_optimal(const NoiseModel& noise, const BaselineSetup& setup);

/// ε̄ = Δε̄ √SNR.
double coupling_bound(double delta_eps, double snr = 1.0);

/// ε̄_5σ = 5 Δε̄ √SNR.
double five_sigma_bound(double delta_eps, double snr = 1.0);

struct SensitivityInputs {
  SchemeVariant variant = SchemeVariant::minus;
  int diamonds = 1;
  int momentum_transfers = 1;
  DmWave wave{2.0 * 3.141592653589793, 0.0, 0.0};
  AtomTransition transition{1.0};
  DetectorGeometry geometry{1.0, 0.5, 0.0, 9.81, 299792458.0};
  NoiseModel noise = FixedPhaseNoise{1.0};
  double snr = 1.0;
  PhysicalConstants constants;
};

struct SensitivityResult {
  double delta_eps = 0.0;
  double eps_5sigma = 0.0;
  double snr = 1.0;
  double delta_omega = 0.0;
  double total_duration = 0.0;
  double interrogation_time = 0.0;  ///< resonant T for the chosen scheme
  double noise_phase = 0.0;
  SensitivityInputs inputs;
};

/// Resonant-mode sensitivity of a fountain gradiometer: T_tot from the
/// fountain kinematics, τ_L from the geometry, T at the scheme's resonance.
SensitivityResult evaluate_sensitivity(const SensitivityInputs& inputs);

}  // namespace dmgrad
