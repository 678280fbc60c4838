#pragma once

#include <string_view>

namespace dmgrad {

/// Multi-diamond pulse-sequence geometry.
enum class SchemeVariant {
  minus,  ///< arm roles interchanged between diamonds; phase sign alternates
  plus,   ///< extra π pulses redirect the arms; no sign change
};

std::string_view to_string(SchemeVariant variant) noexcept;

/// Sign (∓1)^(q-1) applied to diamond q (1-based).
constexpr double diamond_sign(SchemeVariant variant, int q) noexcept {
  return (variant == SchemeVariant::minus && (q - 1) % 2 == 1) ? -1.0 : 1.0;
}

/// A pulse sequence of Q diamonds with half-diamond time T and N
/// transferred momenta. Validated on construction.
class PulseScheme {
 public:
  PulseScheme(SchemeVariant variant, int diamonds, double interrogation_time, int momentum_transfers = 1);

  SchemeVariant variant() const noexcept { return variant_; }
  int diamonds() const noexcept { return diamonds_; }
  double interrogation_time() const noexcept { return interrogation_time_; }
  int momentum_transfers() const noexcept { return momentum_transfers_; }

  /// T_tot = 2 Q T.
  double total_duration() const noexcept { return 2.0 * diamonds_ * interrogation_time_; }

 private:
  SchemeVariant variant_;
  int diamonds_;
  double interrogation_time_;
  int momentum_transfers_;
};

}  // namespace dmgrad
