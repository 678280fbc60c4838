#include "dmgrad/pulse_scheme.hpp"

#include <cmath>

#include "dmgrad/errors.hpp"

namespace dmgrad {

std::string_view to_string(SchemeVariant variant) noexcept {
  return variant == SchemeVariant::minus ? "minus" : "plus";
}

PulseScheme::PulseScheme(SchemeVariant variant, int diamonds, double interrogation_time,
                         int momentum_transfers)
    : variant_(variant),
      diamonds_(diamonds),
      interrogation_time_(interrogation_time),
      momentum_transfers_(momentum_transfers) {
  if (diamonds < 1) throw DomainError("diamond count Q must be at least 1");
  if (momentum_transfers < 1) throw DomainError("momentum number N must be at least 1");
  if (!(interrogation_time > 0.0) || !std::isfinite(interrogation_time)) {
    throw DomainError("interrogation time T must be positive");
  }
}

}  // namespace dmgrad
