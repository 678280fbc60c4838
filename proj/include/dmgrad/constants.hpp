#pragma once

#include <optional>

namespace dmgrad {

/// Exact SI conversion factors used at the config and output boundaries.
namespace units {
inline constexpr double joule_per_gev = 1.602176634e-10;
inline constexpr double cubic_metre_per_cubic_centimetre = 1e-6;
}  // namespace units

enum class GravityMode {
  user_supplied,  ///< g_surface taken as given (default 9.81 m/s²)
  derived,        ///< g_surface = L_P c² m_E / (m_P R_E²)
};

/// Optional replacements for the CODATA 2018 defaults.
struct ConstantOverrides {
  std::optional<double> speed_of_light;
  std::optional<double> hbar;
  std::optional<double> planck_mass;
  std::optional<double> earth_mass;
  std::optional<double> earth_radius;
  std::optional<double> g_surface;
  GravityMode gravity_mode = GravityMode::user_supplied;
};

/// Physical constants in SI units. Immutable after construction.
///
/// The Planck length is not stored independently: it is always
/// hbar / (planck_mass * c), so identities relating the Planck units and
/// Newton's constant hold to rounding.
class PhysicalConstants {
 public:
  /// CODATA 2018 values with user-supplied g = 9.81 m/s².
  PhysicalConstants();
  explicit PhysicalConstants(const ConstantOverrides& overrides);

  double c() const noexcept { return c_; }
  double hbar() const noexcept { return hbar_; }
  double planck_mass() const noexcept { return planck_mass_; }
  double planck_length() const noexcept { return planck_length_; }
  double earth_mass() const noexcept { return earth_mass_; }
  double earth_radius() const noexcept { return earth_radius_; }
  double g_surface() const noexcept { return g_surface_; }
  GravityMode gravity_mode() const noexcept { return gravity_mode_; }

  /// G = hbar c / m_P².
  double gravitational_constant() const noexcept;

 private:
  double c_ = 299792458.0;
  double hbar_ = 1.054571817e-34;
  double planck_mass_ = 2.176434e-8;
  double planck_length_ = 0.0;
  double earth_mass_ = 5.9722e24;
  double earth_radius_ = 6.371e6;
  double g_surface_ = 9.81;
  GravityMode gravity_mode_ = GravityMode::user_supplied;
};

/// GeV/cm³ → J/m³. Throws DomainError for negative input.
double energy_density_to_si(double gev_per_cubic_cm);
/// J/m³ → GeV/cm³.
double energy_density_from_si(double joule_per_cubic_m);

/// Surface gravity (L_P c² m_E)/(m_P R_E²), i.e. G m_E / R_E².
double local_gravity(double earth_mass, double earth_radius, const PhysicalConstants& constants);

}  // namespace dmgrad
