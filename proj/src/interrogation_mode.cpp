#include "dmgrad/interrogation_mode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dmgrad/errors.hpp"
#include "dmgrad/golden_section.hpp"

namespace dmgrad {

void detail::require_diamonds(int q) {
  if (q < 1) throw DomainError("diamond count Q must be at least 1");
}

double resonant_omega_t(SchemeVariant variant) noexcept {
  return variant == SchemeVariant::plus ? std::numbers::pi : std::numbers::pi / 2.0;
}

double resonant_mode_value(SchemeVariant variant, int q) noexcept {
  return variant == SchemeVariant::plus ? static_cast<double>(q) : 0.5 * q;
}

namespace {

using Wide = long double;

constexpr Wide wide_two_pi = 2.0L * std::numbers::pi_v<long double>;
constexpr double tie_tolerance = 1e-12;

struct Peak {
  Wide x;
  Wide value;
};

// Keep the larger peak; near-equal peaks resolve to the smaller abscissa.
bool better(const Peak& candidate, const Peak& incumbent) {
  const Wide scale = std::max(std::abs(candidate.value), std::abs(incumbent.value));
  if (std::abs(candidate.value - incumbent.value) <= tie_tolerance * scale) {
    return candidate.x < incumbent.x;
  }
  return candidate.value > incumbent.value;
}

}  // namespace

ModeMaximum maximize_mode(SchemeVariant variant, int q) {
  detail::require_diamonds(q);
  const auto abs_mode = [&](Wide x) { return std::abs(mode_value<Wide>(variant, x, q)); };

  const int intervals = std::max(200 * q, 400);
  const Wide step = wide_two_pi / intervals;
  std::vector<Wide> grid(intervals + 1);
  for (int i = 0; i <= intervals; ++i) grid[i] = abs_mode(step * i);

  Peak best{0.0L, -1.0L};
  for (int i = 1; i < intervals; ++i) {
    if (grid[i] < grid[i - 1] || grid[i] < grid[i + 1]) continue;
    const auto refined = golden_section_minimize<Wide>([&](Wide x) { return -abs_mode(x); },
                                                       step * (i - 1), step * (i + 1), Wide(1e-10));
    const Peak peak{refined.x, -refined.value};
    if (best.value < 0 || better(peak, best)) best = peak;
  }

  ModeMaximum result;
  result.omega_t_star = static_cast<double>(best.x);
  result.q_max = static_cast<double>(best.value);
  if (variant == SchemeVariant::minus) result.deviation = static_cast<double>(best.value - Wide(q) / 2);
  return result;
}

OffResonantTable off_resonant_scaling_check(SchemeVariant variant, std::span<const int> diamond_counts,
                                            double omega_t_total) {
  if (!(omega_t_total > 0.0 && omega_t_total < 0.01)) {
    throw DomainError("far-off-resonance check requires 0 < omega*T_tot < 0.01");
  }
  if (diamond_counts.empty()) throw DomainError("far-off-resonance check needs at least one Q");

  OffResonantTable table;
  const auto is_reference = [&](int q) { return variant == SchemeVariant::plus || q % 2 == 1; };
  bool any_reference = false;
  for (int q : diamond_counts) {
    detail::require_diamonds(q);
    const double x = omega_t_total / (2.0 * q);
    table.rows.push_back({q, x, std::abs(mode_value<double>(variant, x, q)), 0.0});
    any_reference = any_reference || is_reference(q);
  }

  // least squares for v ≈ c·w with w = 1/Q²; log-log regression for the exponent
  double vw = 0.0, ww = 0.0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (const auto& row : table.rows) {
    if (any_reference && !is_reference(row.diamonds)) continue;
    const double w = 1.0 / (static_cast<double>(row.diamonds) * row.diamonds);
    vw += row.value * w;
    ww += w * w;
    const double lx = std::log(static_cast<double>(row.diamonds));
    const double ly = std::log(row.value);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  table.trend_coefficient = vw / ww;
  const double denom = n * sxx - sx * sx;
  table.fitted_exponent = (n >= 2 && denom > 0.0) ? -(n * sxy - sx * sy) / denom
                                                  : std::numeric_limits<double>::quiet_NaN();

  for (auto& row : table.rows) {
    const double q2 = static_cast<double>(row.diamonds) * row.diamonds;
    row.trend = table.trend_coefficient / q2;
    if (!any_reference || is_reference(row.diamonds)) {
      table.max_trend_residual =
          std::max(table.max_trend_residual, std::abs(row.value / row.trend - 1.0));
    } else if (!(row.value < row.trend)) {
      table.even_below_trend = false;
    }
  }
  return table;
}

}  // namespace dmgrad
