#include "dmgrad/baseline_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dmgrad/errors.hpp"
#include "dmgrad/golden_section.hpp"
#include "dmgrad/interrogation_mode.hpp"

namespace dmgrad {

namespace {

using Wide = long double;

constexpr double edge_fraction = 1e-6;
constexpr int bracket_points = 64;
constexpr Wide relative_width = 1e-10L;

}  // namespace

OptimizationOutcome optimize_height(double baseline, const HeightProblem& p) {
  if (!(baseline > 0.0) || !std::isfinite(baseline)) throw DomainError("baseline B must be positive");
  validate(p.noise);

  const DurationModel duration = p.duration_model ? p.duration_model : DurationModel([&p](Wide h) {
    return total_duration<Wide>(h, Wide(p.gravity), p.diamonds, Wide(p.recoil_velocity));
  });

  const Wide b = baseline;
  Wide lo = edge_fraction * b;
  const Wide hi = (1.0L - edge_fraction) * b;
  if (!p.duration_model && p.recoil_velocity > 0.0) {
    lo = std::max(lo, Wide(minimum_viable_height(p.gravity, p.diamonds, p.recoil_velocity)) * (1.0L + 1e-9L));
  }
  if (!(lo < hi)) throw DomainError("recoil leaves no viable fountain height on this baseline");

  // constants (π/2, N, δΩ, ω, c) drop out of the argmin
  const auto objective = [&](Wide h) {
    const Wide t = duration(h);
    return phase_noise_unchecked<Wide>(p.noise, t) / ((b - h) * t);
  };

  std::vector<Wide> hs(bracket_points), fs(bracket_points);
  for (int i = 0; i < bracket_points; ++i) {
    hs[i] = lo + (hi - lo) * i / (bracket_points - 1);
    fs[i] = objective(hs[i]);
  }
  const auto best = std::min_element(fs.begin(), fs.end()) - fs.begin();
  for (int i = 1; i < bracket_points; ++i) {
    const bool descending = i <= best;
    if ((descending && fs[i] > fs[i - 1]) || (!descending && fs[i] < fs[i - 1])) {
      throw NumericalError("height objective is not unimodal on the baseline", static_cast<double>(hs[i]));
    }
  }
  if (best == 0 || best == bracket_points - 1) {
    throw NumericalError("height optimum is not bracketed inside the baseline", static_cast<double>(hs[best]));
  }

  const auto refined = golden_section_minimize<Wide>(objective, hs[best - 1], hs[best + 1], relative_width * b);

  OptimizationOutcome out;
  out.h_star = static_cast<double>(refined.x);
  out.fraction = static_cast<double>(refined.x / b);
  out.iterations = refined.iterations;
  out.converged = refined.converged;

  const double t_tot = static_cast<double>(duration(refined.x));
  const double tau_l = (baseline - out.h_star) / p.speed_of_light;
  const DmWave wave(p.omega, 0.0, 0.0);
  out.delta_eps_star = uncertainty_resonant(p.noise, p.delta_omega, wave, tau_l, p.momentum_transfers, t_tot);
  return out;
}

NoiseProfile::NoiseProfile(std::vector<std::pair<double, double>> samples) : samples_(std::move(samples)) {
  if (samples_.size() < 2) throw DomainError("noise profile needs at least two samples");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!(samples_[i].first > 0.0)) throw DomainError("noise profile times must be positive");
    if (!(samples_[i].second > 0.0)) throw DomainError("noise profile values must be positive");
    if (i > 0 && !(samples_[i].first > samples_[i - 1].first)) {
      throw DomainError("noise profile times must be strictly increasing");
    }
  }
}

NoiseProfile NoiseProfile::constant(double t_lo, double t_hi, double delta_phi) {
  return NoiseProfile({{t_lo, delta_phi}, {t_hi, delta_phi}});
}

long double NoiseProfile::at(long double t) const {
  const auto upper = std::lower_bound(samples_.begin(), samples_.end(), t,
                                      [](const auto& s, long double v) { return s.first < v; });
  if (upper == samples_.begin()) return upper->second;
  if (upper == samples_.end()) return samples_.back().second;
  const auto lower = upper - 1;
  const long double w = (t - lower->first) / (upper->first - lower->first);
  return lower->second + w * (static_cast<long double>(upper->second) - lower->second);
}

InterrogationOutcome optimize_interrogation(const NoiseProfile& profile, const PulseScheme& scheme,
                                            const DmWave& wave, const DetectorGeometry& geometry,
                                            double delta_omega) {
  const Wide omega = wave.omega();
  const int q = scheme.diamonds();
  const auto ratio = [&](Wide t) {
    const Wide mode = std::abs(mode_value<Wide>(scheme.variant(), omega * t, q));
    if (mode == 0) return std::numeric_limits<Wide>::infinity();
    return profile.at(t) / mode;
  };

  const Wide t_lo = profile.front();
  const Wide t_hi = profile.back();
  const Wide periods = omega * (t_hi - t_lo) / (2.0L * std::numbers::pi_v<Wide>);
  const int intervals = std::max(1000, static_cast<int>(200.0L * q * std::ceil(periods)));
  const Wide step = (t_hi - t_lo) / intervals;

  std::vector<Wide> values(intervals + 1);
  for (int i = 0; i <= intervals; ++i) values[i] = ratio(t_lo + step * i);

  struct Candidate {
    Wide t;
    Wide value;
    int iterations;
    bool converged;
  };
  Candidate best{0, std::numeric_limits<Wide>::infinity(), 0, false};
  const auto consider = [&](const Candidate& c) {
    if (!std::isfinite(c.value)) return;
    const Wide scale = std::max(c.value, best.value);
    if (!std::isfinite(best.value) || c.value < best.value - 1e-12L * scale ||
        (std::abs(c.value - best.value) <= 1e-12L * scale && c.t < best.t)) {
      best = c;
    }
  };

  for (int i = 0; i <= intervals; ++i) {
    if (!std::isfinite(values[i])) continue;
    const bool left_ok = i == 0 || values[i] <= values[i - 1];
    const bool right_ok = i == intervals || values[i] <= values[i + 1];
    if (!left_ok || !right_ok) continue;
    const Wide a = t_lo + step * std::max(i - 1, 0);
    const Wide c = t_lo + step * std::min(i + 1, intervals);
    const auto r = golden_section_minimize<Wide>(ratio, a, c, relative_width * t_hi);
    consider({r.x, r.value, r.iterations, r.converged});
    consider({t_lo + step * i, values[i], 0, true});
  }
  if (!std::isfinite(best.value)) {
    throw DomainError("noise profile interval contains only dead points of the mode function");
  }

  InterrogationOutcome out;
  out.t_star = static_cast<double>(best.t);
  out.mode_value = static_cast<double>(std::abs(mode_value<Wide>(scheme.variant(), omega * best.t, q)));
  out.iterations = best.iterations;
  out.converged = best.converged;
  const auto u = uncertainty_general(static_cast<double>(profile.at(best.t)), delta_omega, geometry.delay(),
                                     scheme.momentum_transfers(), out.mode_value);
  out.delta_eps_star = u.delta_eps;
  return out;
}

}  // namespace dmgrad
