#include "dmgrad/constants.hpp"

#include <cmath>

#include "dmgrad/errors.hpp"

namespace dmgrad {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be positive and finite");
  }
}

}  // namespace

PhysicalConstants::PhysicalConstants() : PhysicalConstants(ConstantOverrides{}) {}

PhysicalConstants::PhysicalConstants(const ConstantOverrides& o) {
  c_ = o.speed_of_light.value_or(c_);
  hbar_ = o.hbar.value_or(hbar_);
  planck_mass_ = o.planck_mass.value_or(planck_mass_);
  earth_mass_ = o.earth_mass.value_or(earth_mass_);
  earth_radius_ = o.earth_radius.value_or(earth_radius_);
  g_surface_ = o.g_surface.value_or(g_surface_);
  gravity_mode_ = o.gravity_mode;

  require_positive(c_, "speed of light");
  require_positive(hbar_, "hbar");
  require_positive(planck_mass_, "Planck mass");
  require_positive(earth_mass_, "Earth mass");
  require_positive(earth_radius_, "Earth radius");
  require_positive(g_surface_, "surface gravity");

  planck_length_ = hbar_ / (planck_mass_ * c_);
  if (gravity_mode_ == GravityMode::derived) {
    g_surface_ = local_gravity(earth_mass_, earth_radius_, *this);
  }
}

double PhysicalConstants::gravitational_constant() const noexcept {
  return hbar_ * c_ / (planck_mass_ * planck_mass_);
}

double energy_density_to_si(double gev_per_cubic_cm) {
  if (!(gev_per_cubic_cm >= 0.0)) {
    throw DomainError("energy density must be non-negative");
  }
  return gev_per_cubic_cm * units::joule_per_gev / units::cubic_metre_per_cubic_centimetre;
}

double energy_density_from_si(double joule_per_cubic_m) {
  if (!(joule_per_cubic_m >= 0.0)) {
    throw DomainError("energy density must be non-negative");
  }
  return joule_per_cubic_m * units::cubic_metre_per_cubic_centimetre / units::joule_per_gev;
}

double local_gravity(double earth_mass, double earth_radius, const PhysicalConstants& k) {
  require_positive(earth_mass, "Earth mass");
  require_positive(earth_radius, "Earth radius");
  const double c2 = k.c() * k.c();
  return k.planck_length() * c2 * earth_mass / (k.planck_mass() * earth_radius * earth_radius);
}

}  // namespace dmgrad
