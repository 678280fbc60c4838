#pragma once

#include <cmath>
#include <concepts>

namespace dmgrad {

/// Vertical gradiometer on a baseline B = L + h: two fountains of height h
/// whose start times differ by the light travel time τ_L = (B − h)/c.
class DetectorGeometry {
 public:
  DetectorGeometry(double baseline, double height, double recoil_velocity, double gravity,
                   double speed_of_light);

  double baseline() const noexcept { return baseline_; }
  double height() const noexcept { return height_; }
  double separation() const noexcept { return baseline_ - height_; }
  double delay() const noexcept { return separation() / c_; }
  double recoil_velocity() const noexcept { return recoil_velocity_; }
  double gravity() const noexcept { return gravity_; }
  double speed_of_light() const noexcept { return c_; }

  DetectorGeometry with_height(double height) const {
    return DetectorGeometry(baseline_, height, recoil_velocity_, gravity_, c_);
  }

 private:
  double baseline_;
  double height_;
  double recoil_velocity_;
  double gravity_;
  double c_;
};

namespace detail {
[[noreturn]] void throw_duration_error(double height, double gravity, int diamonds, double recoil_velocity);
}

/// Fountain sequence duration T_tot ≅ √(8h/g) − 2 v_r/(g Q). Throws
/// DomainError (quoting the minimum viable height) when the result is not
/// positive.
template <std::floating_point Real>
Real total_duration(Real height, Real gravity, int diamonds, Real recoil_velocity) {
  if (!(height > 0 && gravity > 0 && diamonds >= 1 && recoil_velocity >= 0)) {
    detail::throw_duration_error(static_cast<double>(height), static_cast<double>(gravity), diamonds,
                                 static_cast<double>(recoil_velocity));
  }
  const Real t = std::sqrt(Real(8) * height / gravity) - Real(2) * recoil_velocity / (gravity * diamonds);
  if (!(t > 0)) {
    detail::throw_duration_error(static_cast<double>(height), static_cast<double>(gravity), diamonds,
                                 static_cast<double>(recoil_velocity));
  }
  return t;
}

inline double total_duration(double height, double gravity, int diamonds, double recoil_velocity) {
  return total_duration<double>(height, gravity, diamonds, recoil_velocity);
}

/// Smallest height with a positive sequence duration, v_r² / (2 g Q²).
double minimum_viable_height(double gravity, int diamonds, double recoil_velocity);

}  // namespace dmgrad
