#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "approx.hpp"
#include "dmgrad/errors.hpp"
#include "dmgrad/interrogation_mode.hpp"

using namespace dmgrad;

namespace {

constexpr double pi = std::numbers::pi;

// Ratio forms with removable singularities; only valid away from them.
double raw_plus(double x, int q) { return 0.5 * std::sin(q * x) * std::tan(0.5 * x); }

double raw_minus(double x, int q) {
  const double s = std::sin(0.5 * x);
  const double ratio = q % 2 == 1 ? std::cos(q * x) / std::cos(x) : std::sin(q * x) / std::cos(x);
  return s * s * ratio;
}

struct FrozenMaximum {
  int q;
  double omega_t_star;
  double q_max;
};

// mpmath, dps 40: stationary points of |Q₋| solved to full precision.
constexpr std::array<FrozenMaximum, 8> frozen_minus_maxima{{
    {1, 3.14159265358979323846, 1.0},
    {2, 2.09439510239319549, 1.29903810567665797},
    {3, 1.84168922468254876, 1.7198549366857752},
    {4, 1.73511820016787211, 2.17294866543796006},
    {5, 1.68043879128536693, 2.64199431899325465},
    {6, 1.64886810879865161, 3.12016652759023773},
    {7, 1.62908472295653072, 3.60401611901138481},
    {8, 1.61591118204933597, 4.09161721252493567},
}};

}  // namespace

TEST_CASE("factored forms equal the ratio forms away from the singular points") {
  dmgrad::test::Draw draw(21);
  int checked = 0;
  while (checked < 2000) {
    const double x = draw.uniform(0.0, 2.0 * pi);
    const int q = draw.integer(1, 20);
    if (std::abs(std::cos(x)) < 0.05 || std::abs(std::cos(0.5 * x)) < 0.05) continue;
    CHECK(std::abs(mode_plus(x, q) - raw_plus(x, q)) < 1e-12 * q);
    CHECK(std::abs(mode_minus(x, q) - raw_minus(x, q)) < 1e-12 * q * q);
    ++checked;
  }
}

TEST_CASE("resonant amplification is exact at the singular points") {
  for (int q = 1; q <= 50; ++q) {
    CHECK(std::abs(std::abs(mode_minus(pi / 2.0, q)) - 0.5 * q) <= 1e-10);
    CHECK(std::abs(std::abs(mode_plus(pi, q)) - q) <= 1e-10);
    CHECK(resonant_mode_value(SchemeVariant::minus, q) == 0.5 * q);
    CHECK(resonant_mode_value(SchemeVariant::plus, q) == q);
  }
  CHECK(resonant_omega_t(SchemeVariant::minus) == pi / 2.0);
  CHECK(resonant_omega_t(SchemeVariant::plus) == pi);
}

TEST_CASE("mode functions are continuous through the removable singularities") {
  for (int q = 1; q <= 12; ++q) {
    for (double x0 : {pi / 2.0, 1.5 * pi}) {
      for (double h : {1e-4, 1e-7, 1e-10}) {
        CHECK(std::abs(mode_minus(x0 + h, q) - mode_minus(x0 - h, q)) < 4.0 * q * q * h);
      }
    }
    for (double h : {1e-4, 1e-7, 1e-10}) {
      CHECK(std::abs(mode_plus(pi + h, q) - mode_plus(pi - h, q)) < 4.0 * q * q * h);
    }
  }
}

TEST_CASE("parity and periodicity") {
  dmgrad::test::Draw draw(22);
  for (int i = 0; i < 500; ++i) {
    const double x = draw.uniform(0.0, 2.0 * pi);
    const int q = draw.integer(1, 15);
    const double parity = q % 2 == 1 ? 1.0 : -1.0;
    CHECK(std::abs(mode_plus(-x, q) - mode_plus(x, q)) < 1e-13 * q);
    CHECK(std::abs(mode_minus(-x, q) - parity * mode_minus(x, q)) < 1e-13 * q);
    CHECK(std::abs(mode_plus(x + 2.0 * pi, q) - mode_plus(x, q)) < 1e-12 * q);
    CHECK(std::abs(mode_minus(x + 2.0 * pi, q) - mode_minus(x, q)) < 1e-12 * q);
    CHECK(std::abs(mode_minus(x, q)) <= q * (1.0 + 1e-14));
    CHECK(std::abs(mode_plus(x, q)) <= q * (1.0 + 1e-14));
  }
}

TEST_CASE("a single diamond has no scheme dependence") {
  for (int i = 0; i <= 100; ++i) {
    const double x = 2.0 * pi * i / 100;
    const double s = std::sin(0.5 * x);
    CHECK(std::abs(mode_plus(x, 1) - s * s) < 1e-15);
    CHECK(std::abs(mode_minus(x, 1) - s * s) < 1e-15);
  }
}

TEST_CASE("invalid diamond counts are rejected") {
  CHECK_THROWS_AS(mode_plus(1.0, 0), DomainError);
  CHECK_THROWS_AS(mode_minus(1.0, -3), DomainError);
  CHECK_THROWS_AS(maximize_mode(SchemeVariant::minus, 0), DomainError);
}

TEST_CASE("minus maxima match frozen high-precision values") {
  for (const auto& f : frozen_minus_maxima) {
    CAPTURE(f.q);
    const auto m = maximize_mode(SchemeVariant::minus, f.q);
    CHECK(std::abs(m.q_max - f.q_max) < 1e-13);
    CHECK(std::abs(m.omega_t_star - f.omega_t_star) < 1e-8);
    REQUIRE(m.deviation.has_value());
    CHECK(std::abs(*m.deviation - (f.q_max - 0.5 * f.q)) < 1e-13);
  }
}

TEST_CASE("minus deviation is non-negative and shrinks with Q") {
  double previous = INFINITY;
  for (int q = 1; q <= 30; ++q) {
    const auto m = maximize_mode(SchemeVariant::minus, q);
    CAPTURE(q);
    CHECK(*m.deviation >= 0.0);
    CHECK(*m.deviation <= previous);
    CHECK(m.omega_t_star > 0.0);
    CHECK(m.omega_t_star <= pi + 1e-8);
    if (q >= 6) CHECK(*m.deviation / (0.5 * q) < 0.05);
    previous = *m.deviation;
  }
}

TEST_CASE("plus maximum sits at the resonance") {
  for (int q = 1; q <= 20; ++q) {
    const auto m = maximize_mode(SchemeVariant::plus, q);
    CHECK(std::abs(m.q_max - q) < 1e-12 * q);
    CHECK(std::abs(m.omega_t_star - pi) < 1e-6);
    CHECK_FALSE(m.deviation.has_value());
  }
}

TEST_CASE("far-off-resonance scaling") {
  std::vector<int> qs;
  for (int q = 1; q <= 15; ++q) qs.push_back(q);

  const auto minus = off_resonant_scaling_check(SchemeVariant::minus, qs, 0.005);
  CHECK(minus.max_trend_residual <= 0.01);
  CHECK(minus.even_below_trend);
  CHECK(std::abs(minus.fitted_exponent - 2.0) < 1e-3);
  // Leading order: |Q₋| ≈ (ωT_tot)² / (16 Q²) for odd Q.
  CHECK(dmgrad::test::rel_diff(minus.trend_coefficient, 0.005 * 0.005 / 16.0) < 1e-4);

  // The resonant scheme keeps one power of Q: |Q₊| ≈ (ωT_tot)² / (16 Q).
  const auto plus = off_resonant_scaling_check(SchemeVariant::plus, qs, 0.005);
  CHECK(std::abs(plus.fitted_exponent - 1.0) < 1e-3);
  for (const auto& row : plus.rows) {
    CHECK(dmgrad::test::rel_diff(row.value, 0.005 * 0.005 / (16.0 * row.diamonds)) < 1e-4);
  }

  CHECK_THROWS_AS(off_resonant_scaling_check(SchemeVariant::minus, qs, 0.02), DomainError);
  CHECK_THROWS_AS(off_resonant_scaling_check(SchemeVariant::minus, std::span<const int>{}, 0.005), DomainError);
}
