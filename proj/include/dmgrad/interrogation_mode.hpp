#pragma once

#include <cmath>
#include <concepts>
#include <optional>
#include <span>
#include <vector>

#include "dmgrad/pulse_scheme.hpp"

namespace dmgrad {

namespace detail {

/// Chebyshev polynomial of the second kind U_n(t) by the three-term
/// recurrence; U_{Q-1}(cos x) = sin(Qx)/sin(x) without the 0/0 at x = kπ.
template <std::floating_point Real>
Real chebyshev_u(int n, Real t) {
  if (n == 0) return Real(1);
  Real prev = Real(1);
  Real cur = Real(2) * t;
  for (int k = 1; k < n; ++k) {
    const Real next = Real(2) * t * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

void require_diamonds(int q);

}  // namespace detail

/// Q₊(ωT, Q) = ½ sin(QωT) tan(ωT/2), evaluated as sin²(ωT/2) U_{Q-1}(cos ωT),
/// which is finite at ωT = π where the tangent diverges.
template <std::floating_point Real>
Real mode_plus(Real omega_t, int q) {
  detail::require_diamonds(q);
  const Real s = std::sin(omega_t / Real(2));
  return s * s * detail::chebyshev_u(q - 1, std::cos(omega_t));
}

/// Q₋(ωT, Q): sin²(ωT/2) cos(QωT)/cos ωT for odd Q, sin²(ωT/2) sin(QωT)/cos ωT
/// for even Q. Both ratios are ±U_{Q-1}(sin ωT), so the removable
/// singularities at cos ωT = 0 never appear.
template <std::floating_point Real>
Real mode_minus(Real omega_t, int q) {
  detail::require_diamonds(q);
  const Real s = std::sin(omega_t / Real(2));
  const Real u = detail::chebyshev_u(q - 1, std::sin(omega_t));
  // odd Q: (-1)^((Q-1)/2); even Q: (-1)^(Q/2 + 1)
  const int k = (q % 2 == 1) ? (q - 1) / 2 : q / 2 + 1;
  const Real sign = (k % 2 == 0) ? Real(1) : Real(-1);
  return sign * s * s * u;
}

template <std::floating_point Real>
Real mode_value(SchemeVariant variant, Real omega_t, int q) {
  return variant == SchemeVariant::plus ? mode_plus(omega_t, q) : mode_minus(omega_t, q);
}

inline double mode_plus(double omega_t, int q) { return mode_plus<double>(omega_t, q); }
inline double mode_minus(double omega_t, int q) { return mode_minus<double>(omega_t, q); }

/// ωT at which |Q∓| is resonantly amplified: π/2 for minus, π for plus.
double resonant_omega_t(SchemeVariant variant) noexcept;

/// |Q∓| at resonance: Q/2 for minus, Q for plus.
double resonant_mode_value(SchemeVariant variant, int q) noexcept;

struct ModeMaximum {
  double omega_t_star = 0.0;
  double q_max = 0.0;
  /// q_max − Q/2; only defined for the minus scheme.
  std::optional<double> deviation;
};

/// Global maximum of |Q∓(ωT, Q)| over ωT ∈ (0, 2π): a grid of max(200Q, 400) points,
/// golden-section refinement of every grid peak, ties to the smallest ωT.
ModeMaximum maximize_mode(SchemeVariant variant, int q);

struct OffResonantRow {
  int diamonds = 0;
  double omega_t = 0.0;
  double value = 0.0;  ///< |Q∓| at T = T_tot / (2Q)
  double trend = 0.0;  ///< c / Q² from the reference fit
};

struct OffResonantTable {
  std::vector<OffResonantRow> rows;
  /// c of the least-squares fit value ≈ c/Q² over the reference rows
  /// (odd Q for minus, all Q for plus).
  double trend_coefficient = 0.0;
  /// max |value·Q²/c − 1| over the reference rows.
  double max_trend_residual = 0.0;
  /// p of a log-log fit value ∝ Q^(−p) over the reference rows (NaN if < 2 rows).
  double fitted_exponent = 0.0;
  /// Minus scheme: every even-Q row lies strictly below the trend.
  bool even_below_trend = true;
};

/// Mode values at fixed total duration ωT_tot ≪ 1 (required < 0.01).
OffResonantTable off_resonant_scaling_check(SchemeVariant variant, std::span<const int> diamond_counts,
                                            double omega_t_total);

}  // namespace dmgrad
