#include <doctest.h>

#include <cmath>
#include <numbers>

#include "approx.hpp"
#include "dmgrad/baseline_optimizer.hpp"
#include "dmgrad/errors.hpp"
#include "dmgrad/interrogation_mode.hpp"

using namespace dmgrad;
using dmgrad::test::rel_diff;

namespace {

constexpr double pi = std::numbers::pi;

HeightProblem problem(const NoiseModel& noise, double recoil = 0.0, int q = 1) {
  HeightProblem p;
  p.noise = noise;
  p.recoil_velocity = recoil;
  p.diamonds = q;
  p.gravity = 9.81;
  return p;
}

// Brute-force argmin of ΔΦ_S(T_tot(h)) / ((B − h) T_tot(h)) on a dense grid.
double scan_optimum(double b, const HeightProblem& p) {
  const double lo = std::max(1e-6 * b, minimum_viable_height(p.gravity, p.diamonds, p.recoil_velocity) * 1.000001);
  double best_h = lo;
  double best = INFINITY;
  constexpr int n = 200000;
  for (int i = 0; i <= n; ++i) {
    const double h = lo + (b * (1.0 - 1e-6) - lo) * i / n;
    const double t = total_duration(h, p.gravity, p.diamonds, p.recoil_velocity);
    const double f = phase_noise_unchecked<double>(p.noise, t) / ((b - h) * t);
    if (f < best) best = f, best_h = h;
  }
  return best_h;
}

}  // namespace

TEST_CASE("fixed noise optimum at one third of the baseline") {
  for (double b : {10.0, 100.0, 1000.0, 1e4}) {
    const auto r = optimize_height(b, problem(FixedPhaseNoise{1e-3}));
    CHECK(r.converged);
    CHECK(std::abs(r.fraction - 1.0 / 3.0) < 1e-8);
    CHECK(std::abs(r.h_star / b - 1.0 / 3.0) < 1e-8);
  }
}

TEST_CASE("shot and quantum-enhanced noise optimum at one fifth") {
  for (double b : {10.0, 100.0, 1000.0, 1e4}) {
    CHECK(std::abs(optimize_height(b, problem(ShotNoise{1e6, 1e4})).fraction - 0.2) < 1e-8);
    CHECK(std::abs(optimize_height(b, problem(QuantumEnhancedNoise{1e6, 1e4})).fraction - 0.2) < 1e-8);
  }
}

TEST_CASE("reported uncertainty is the resonant value at the optimum") {
  auto p = problem(ShotNoise{1e6, 1e4});
  p.delta_omega = 0.47;
  p.omega = 2.0 * pi;
  p.momentum_transfers = 10;
  const auto r = optimize_height(100.0, p);
  const double t = total_duration(r.h_star, p.gravity, 1, 0.0);
  const double expected = uncertainty_resonant(p.noise, 0.47, DmWave(2.0 * pi, 0.0, 0.0),
                                               (100.0 - r.h_star) / p.speed_of_light, 10, t);
  CHECK(rel_diff(r.delta_eps_star, expected) < 1e-14);
}

TEST_CASE("recoil moves the optimum continuously") {
  for (const NoiseModel& noise : {NoiseModel{FixedPhaseNoise{1e-3}}, NoiseModel{ShotNoise{1e6, 1e4}}}) {
    const double b = 20.0;
    const double base = optimize_height(b, problem(noise)).h_star;
    double previous = base;
    for (double v : {1e-6, 1e-3, 0.1, 1.0, 3.0}) {
      const auto p = problem(noise, v, 2);
      const auto r = optimize_height(b, p);
      CAPTURE(v);
      CHECK(r.converged);
      CHECK(r.h_star > minimum_viable_height(p.gravity, 2, v));
      CHECK(std::abs(r.h_star - scan_optimum(b, p)) < 2e-3 * b);
      if (v == 1e-6) CHECK(std::abs(r.h_star - base) < 1e-5);
      CHECK(r.h_star >= previous - 1e-9);  // a shorter sequence favours taller fountains
      previous = r.h_star;
    }
  }
}

TEST_CASE("duration model hook") {
  auto p = problem(FixedPhaseNoise{1e-3});
  p.duration_model = [](long double h) { return 0.1L * h; };
  CHECK(std::abs(optimize_height(50.0, p).fraction - 0.5) < 1e-8);
}

TEST_CASE("height problem validation") {
  CHECK_THROWS_AS(optimize_height(0.0, problem(FixedPhaseNoise{1e-3})), DomainError);
  CHECK_THROWS_AS(optimize_height(100.0, problem(FixedPhaseNoise{0.0})), DomainError);
  // recoil alone needs more height than the baseline provides
  CHECK_THROWS_AS(optimize_height(1.0, problem(FixedPhaseNoise{1e-3}, 50.0)), DomainError);
}

TEST_CASE("constant noise profile picks the mode maximum") {
  const DmWave w(1.0, 0.0, 0.0);
  const DetectorGeometry geo(100.0, 20.0, 0.0, 9.81, 299792458.0);
  for (int q : {1, 3, 5}) {
    const PulseScheme scheme(SchemeVariant::minus, q, 1.0);
    const auto r = optimize_interrogation(NoiseProfile::constant(0.05, 2.0 * pi - 0.05, 1e-3), scheme, w, geo, 0.5);
    const auto m = maximize_mode(SchemeVariant::minus, q);
    CAPTURE(q);
    CHECK(std::abs(r.t_star - m.omega_t_star) < 1e-6);
    CHECK(rel_diff(r.mode_value, m.q_max) < 1e-12);
    CHECK(rel_diff(r.delta_eps_star, 1e-3 / (4.0 * 0.5 * geo.delay() * m.q_max)) < 1e-12);
  }
}

TEST_CASE("rising noise pulls the interrogation time below the mode maximum") {
  const DmWave w(1.0, 0.0, 0.0);
  const DetectorGeometry geo(100.0, 20.0, 0.0, 9.81, 299792458.0);
  const PulseScheme scheme(SchemeVariant::plus, 1, 1.0);
  const NoiseProfile profile({{0.1, 1e-3}, {6.0, 1e-1}});
  const auto r = optimize_interrogation(profile, scheme, w, geo, 0.5);
  CHECK(r.t_star < pi);
  CHECK(r.t_star > 0.1);
  // stationarity of ΔΦ(T)/sin²(T/2) on the linear profile
  const double h = 1e-5;
  const auto f = [&](double t) { return static_cast<double>(profile.at(t)) / std::pow(std::sin(0.5 * t), 2); };
  CHECK(f(r.t_star) <= f(r.t_star - h));
  CHECK(f(r.t_star) <= f(r.t_star + h));
}

TEST_CASE("noise profile validation and interpolation") {
  CHECK_THROWS_AS(NoiseProfile({{1.0, 1e-3}}), DomainError);
  CHECK_THROWS_AS(NoiseProfile({{2.0, 1e-3}, {1.0, 1e-3}}), DomainError);
  CHECK_THROWS_AS(NoiseProfile({{1.0, 0.0}, {2.0, 1e-3}}), DomainError);
  CHECK(NoiseProfile({{1.0, 1.0}, {3.0, 2.0}}).at(2.0L) == 1.5L);
  CHECK(NoiseProfile({{1.0, 1.0}, {3.0, 2.0}}).at(5.0L) == 2.0L);
}
