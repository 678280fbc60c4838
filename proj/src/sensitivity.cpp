#include "dmgrad/sensitivity.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dmgrad/errors.hpp"
#include "dmgrad/interrogation_mode.hpp"

namespace dmgrad {

namespace {

constexpr double pi = std::numbers::pi;

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) throw DomainError(std::string(name) + " must be positive");
}

void require_momentum(int n) {
  if (n < 1) throw DomainError("momentum number N must be at least 1");
}

// m_P c²/(ħΩ) · L_P/R_E · √(m_E c²/(ρ_DM B³)), shared by the optimal-height closed forms.
double baseline_factor(const BaselineSetup& s) {
  require_positive(s.baseline, "baseline B");
  require_positive(s.omega_atom, "transition frequency");
  require_positive(s.rho_dm, "DM energy density");
  require_momentum(s.momentum_transfers);
  const auto& k = s.constants;
  const double c2 = k.c() * k.c();
  const double b3 = s.baseline * s.baseline * s.baseline;
  return k.planck_mass() * c2 / (k.hbar() * s.omega_atom) * (k.planck_length() / k.earth_radius()) *
         std::sqrt(k.earth_mass() * c2 / (s.rho_dm * b3));
}

}  // namespace

std::string_view noise_kind_name(const NoiseModel& noise) noexcept {
  switch (noise.index()) {
    case 0:
      return "fixed";
    case 1:
      return "shot";
    default:
      return "quantum_enhanced";
  }
}

void validate(const NoiseModel& noise) {
  if (const auto* fixed = std::get_if<FixedPhaseNoise>(&noise)) {
    require_positive(fixed->delta_phi, "phase noise delta_phi");
    return;
  }
  const auto [atoms, t_int] = std::visit(
      [](const auto& n) -> std::pair<double, double> {
        if constexpr (std::is_same_v<std::decay_t<decltype(n)>, FixedPhaseNoise>) {
          return {1.0, 1.0};
        } else {
          return {n.atom_number, n.integration_time};
        }
      },
      noise);
  if (!(atoms >= 1.0) || !std::isfinite(atoms)) throw DomainError("atom number n_at must be at least 1");
  require_positive(t_int, "integration time T_int");
}

double repetitions(const NoiseModel& noise, double total_duration) {
  require_positive(total_duration, "total duration T_tot");
  if (const auto* shot = std::get_if<ShotNoise>(&noise)) return shot->integration_time / total_duration;
  if (const auto* q = std::get_if<QuantumEnhancedNoise>(&noise)) return q->integration_time / total_duration;
  return std::numeric_limits<double>::quiet_NaN();
}

double phase_noise(const NoiseModel& noise, double total_duration) {
  validate(noise);
  require_positive(total_duration, "total duration T_tot");
  if (!std::holds_alternative<FixedPhaseNoise>(noise)) {
    const double nu = repetitions(noise, total_duration);
    if (nu < 1.0) {
      std::ostringstream msg;
      msg << "integration time shorter than one sequence: T_int/T_tot = " << nu;
      throw DomainError(msg.str());
    }
  }
  return phase_noise_unchecked<double>(noise, total_duration);
}

Uncertainty uncertainty_general(double noise_phase, double delta_omega, double tau_l, int momentum_transfers,
                                double mode_value) {
  require_positive(noise_phase, "phase noise");
  require_positive(delta_omega, "delta_omega");
  require_positive(tau_l, "propagation delay tau_L");
  require_momentum(momentum_transfers);
  const double mode = std::abs(mode_value);
  if (!std::isfinite(mode)) throw DomainError("mode value must be finite");
  if (mode == 0.0) return {};
  return {noise_phase / (4.0 * delta_omega * tau_l * momentum_transfers * mode)};
}

double uncertainty_resonant(double noise_phase, double delta_omega, const DmWave& wave, double tau_l,
                            int momentum_transfers, double total_duration) {
  require_positive(noise_phase, "phase noise");
  require_positive(delta_omega, "delta_omega");
  require_positive(tau_l, "propagation delay tau_L");
  require_positive(total_duration, "total duration T_tot");
  require_momentum(momentum_transfers);
  return 0.5 * pi * noise_phase /
         (momentum_transfers * delta_omega * wave.omega() * tau_l * total_duration);
}

double uncertainty_shot_noise(double atom_number, double integration_time, double delta_omega,
                              const DmWave& wave, double tau_l, int momentum_transfers, double total_duration) {
  if (!(atom_number >= 1.0)) throw DomainError("atom number n_at must be at least 1");
  require_positive(delta_omega, "delta_omega");
  require_positive(tau_l, "propagation delay tau_L");
  require_positive(total_duration, "total duration T_tot");
  require_momentum(momentum_transfers);
  if (!(integration_time >= total_duration)) {
    throw DomainError("integration time T_int must be at least the sequence duration T_tot");
  }
  return pi / (std::sqrt(2.0 * atom_number) * momentum_transfers * delta_omega * wave.omega() * tau_l *
               std::sqrt(total_duration * integration_time));
}

double uncertainty_resonant(const NoiseModel& noise, double delta_omega, const DmWave& wave, double tau_l,
                            int momentum_transfers, double total_duration) {
  return uncertainty_resonant(phase_noise(noise, total_duration), delta_omega, wave, tau_l, momentum_transfers,
                              total_duration);
}

double closed_form_fixed_noise(double delta_phi, const BaselineSetup& setup) {
  require_positive(delta_phi, "phase noise delta_phi");
  return 3.0 * std::sqrt(3.0 * pi) * delta_phi / (32.0 * setup.momentum_transfers) * baseline_factor(setup);
}

double closed_form_shot_noise(double atom_number, double repetitions, const BaselineSetup& setup) {
  if (!(atom_number >= 1.0)) throw DomainError("atom number n_at must be at least 1");
  require_positive(repetitions, "repetitions nu");
  return 5.0 / (64.0 * setup.momentum_transfers) * std::sqrt(10.0 * pi / (atom_number * repetitions)) *
         baseline_factor(setup);
}

double five_sigma_shot_noise(double atom_number, double repetitions, double snr, const BaselineSetup& setup) {
  if (!(atom_number >= 1.0)) throw DomainError("atom number n_at must be at least 1");
  require_positive(repetitions, "repetitions nu");
  require_positive(snr, "SNR");
  return 25.0 / (64.0 * setup.momentum_transfers) * std::sqrt(10.0 * pi * snr / (atom_number * repetitions)) *
         baseline_factor(setup);
}

double closed_form_optimal(const NoiseModel& noise, const BaselineSetup& setup) {
  validate(noise);
  if (const auto* fixed = std::get_if<FixedPhaseNoise>(&noise)) {
    return closed_form_fixed_noise(fixed->delta_phi, setup);
  }
  const auto& k = setup.constants;
  const double g = local_gravity(k.earth_mass(), k.earth_radius(), k);
  const double t_tot = std::sqrt(8.0 * (setup.baseline / 5.0) / g);
  const double nu = repetitions(noise, t_tot);
  if (nu < 1.0) throw DomainError("integration time shorter than one sequence at the optimal height");
  if (const auto* shot = std::get_if<ShotNoise>(&noise)) return closed_form_shot_noise(shot->atom_number, nu, setup);
  const auto& q = std::get<QuantumEnhancedNoise>(noise);
  return closed_form_shot_noise(q.atom_number, nu, setup) / std::sqrt(q.atom_number);
}

double coupling_bound(double delta_eps, double snr) {
  require_positive(snr, "SNR");
  return delta_eps * std::sqrt(snr);
}

double five_sigma_bound(double delta_eps, double snr) { return 5.0 * coupling_bound(delta_eps, snr); }

SensitivityResult evaluate_sensitivity(const SensitivityInputs& in) {
  SensitivityResult r;
  r.inputs = in;
  r.snr = in.snr;
  const auto& geo = in.geometry;
  r.delta_omega = delta_omega(in.transition, in.wave, in.constants);
  r.total_duration = total_duration(geo.height(), geo.gravity(), in.diamonds, geo.recoil_velocity());
  r.interrogation_time = resonant_omega_t(in.variant) / in.wave.omega();
  r.noise_phase = phase_noise(in.noise, r.total_duration);
  r.delta_eps = uncertainty_resonant(r.noise_phase, r.delta_omega, in.wave, geo.delay(), in.momentum_transfers,
                                     r.total_duration);
  r.eps_5sigma = five_sigma_bound(r.delta_eps, in.snr);
  return r;
}

}  // namespace dmgrad
