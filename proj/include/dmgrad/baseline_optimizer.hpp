#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "dmgrad/geometry.hpp"
#include "dmgrad/phase_model.hpp"
#include "dmgrad/pulse_scheme.hpp"
#include "dmgrad/sensitivity.hpp"

namespace dmgrad {

/// T_tot as a function of fountain height. The default is the fountain
/// parabola with recoil correction; drop-mode operation plugs in here.
using DurationModel = std::function<long double(long double height)>;

struct HeightProblem {
  NoiseModel noise = FixedPhaseNoise{1.0};
  int diamonds = 1;
  double recoil_velocity = 0.0;
  double gravity = 9.81;
  double speed_of_light = 299792458.0;
  /// Only needed to report Δε̄ at the optimum.
  double delta_omega = 1.0;
  double omega = 1.0;
  int momentum_transfers = 1;
  DurationModel duration_model;  ///< empty: fountain kinematics
};

struct OptimizationOutcome {
  double h_star = 0.0;
  double fraction = 0.0;
  double delta_eps_star = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Height that minimises the resonant Δε̄(h) ∝ ΔΦ_S(T_tot(h)) / ((B − h) T_tot(h))
/// on (εB, (1 − ε)B), ε = 1e-6. A 64-point scan checks unimodality before a
/// golden-section search to relative width 1e-10. With v_r = 0 this yields
/// h = B/3 for fixed noise and h = B/5 for shot noise.
OptimizationOutcome optimize_height(double baseline, const HeightProblem& problem);

/// ΔΦ_S(T) tabulated on strictly increasing T, linearly interpolated.
class NoiseProfile {
 public:
  explicit NoiseProfile(std::vector<std::pair<double, double>> samples);

  /// Constant noise level on [t_lo, t_hi].
  static NoiseProfile constant(double t_lo, double t_hi, double delta_phi);

  double front() const noexcept { return samples_.front().first; }
  double back() const noexcept { return samples_.back().first; }
  long double at(long double t) const;

 private:
  std::vector<std::pair<double, double>> samples_;
};

struct InterrogationOutcome {
  double t_star = 0.0;
  double delta_eps_star = 0.0;
  double mode_value = 0.0;  ///< |Q∓(ωT*, Q)|
  int iterations = 0;
  bool converged = false;
};

/// Interrogation time minimising ΔΦ_S(T)/|Q∓(ωT, Q)| on the profile's range.
/// The scheme's own T is ignored; geometry supplies τ_L.
InterrogationOutcome optimize_interrogation(const NoiseProfile& profile, const PulseScheme& scheme,
                                            const DmWave& wave, const DetectorGeometry& geometry,
                                            double delta_omega);

}  // namespace dmgrad
