#pragma once

// Time-domain evaluation of the dark-matter induced clock phase. These are
// the brute-force references that the closed-form signal amplitude is
// checked against.

#include <optional>

#include "dmgrad/pulse_scheme.hpp"

namespace dmgrad {

/// Classical, spatially uniform scalar DM field.
class DmWave {
 public:
  /// omega > 0 [rad/s], rho_dm ≥ 0 [J/m³]; phi is reduced to [0, 2π).
  DmWave(double omega, double phi, double rho_dm);

  double omega() const noexcept { return omega_; }
  double phi() const noexcept { return phi_; }
  double rho_dm() const noexcept { return rho_dm_; }

  DmWave with_phase(double phi) const { return DmWave(omega_, phi, rho_dm_); }

 private:
  double omega_;
  double phi_;
  double rho_dm_;
};

struct DiamondPhaseInput {
  double t0 = 0.0;
  double interrogation_time = 0.0;
  double eps_bar = 0.0;
  double delta_omega = 0.0;  ///< oscillation amplitude δΩ [rad/s]
};

/// Phase picked up by one Mach-Zehnder diamond starting at t0.
double single_diamond_phase(const DiamondPhaseInput& input, const DmWave& wave);

/// Signed sum of Q diamond phases, the q-th one starting at t0 + 2(q-1)T.
double multi_diamond_phase(const PulseScheme& scheme, double t0, const DmWave& wave, double eps_bar,
                           double delta_omega);

/// Φ(t0 + τ_L) − Φ(t0) for the two interferometers of the gradiometer.
double differential_phase(const PulseScheme& scheme, double t0, double tau_l, const DmWave& wave,
                          double eps_bar, double delta_omega);

struct RmsOracleOptions {
  /// Quadrature error bound on ∫ (ω δΦ / ε̄δΩ)² dφ, relative to its L1 norm.
  double relative_tolerance = 1e-12;
  /// Relative agreement demanded between two start times.
  double t0_invariance_tolerance = 1e-10;
  /// Second start time used for the invariance check; default t0 + 0.37 T + 1.3/ω.
  std::optional<double> t0_probe;
};

/// Φ_S = [2 ∫ dφ δΦ² / (2π)]^{1/2}, by adaptive quadrature over the DM
/// shot phase. Throws NumericalError when the quadrature does not converge or
/// the result depends on t0 beyond tolerance.
double rms_signal_amplitude_oracle(const PulseScheme& scheme, double t0, double tau_l,
                                   const DmWave& wave_template, double eps_bar, double delta_omega,
                                   const RmsOracleOptions& options = {});

}  // namespace dmgrad
