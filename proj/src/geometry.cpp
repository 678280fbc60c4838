#include "dmgrad/geometry.hpp"

#include <sstream>

#include "dmgrad/errors.hpp"

namespace dmgrad {

DetectorGeometry::DetectorGeometry(double baseline, double height, double recoil_velocity, double gravity,
                                   double speed_of_light)
    : baseline_(baseline), height_(height), recoil_velocity_(recoil_velocity), gravity_(gravity),
      c_(speed_of_light) {
  if (!(baseline > 0.0) || !std::isfinite(baseline)) throw DomainError("baseline B must be positive");
  if (!(height > 0.0 && height < baseline)) throw DomainError("fountain height h must satisfy 0 < h < B");
  if (!(recoil_velocity >= 0.0)) throw DomainError("recoil velocity v_r must be non-negative");
  if (!(gravity > 0.0)) throw DomainError("gravity g must be positive");
  if (!(speed_of_light > 0.0)) throw DomainError("speed of light must be positive");
}

double minimum_viable_height(double gravity, int diamonds, double recoil_velocity) {
  if (!(gravity > 0.0) || diamonds < 1) throw DomainError("minimum height needs g > 0 and Q >= 1");
  return recoil_velocity * recoil_velocity / (2.0 * gravity * diamonds * diamonds);
}

void detail::throw_duration_error(double height, double gravity, int diamonds, double recoil_velocity) {
  std::ostringstream msg;
  if (!(height > 0.0 && gravity > 0.0 && diamonds >= 1 && recoil_velocity >= 0.0)) {
    msg << "total duration needs h > 0, g > 0, Q >= 1, v_r >= 0 (got h=" << height << ", g=" << gravity
        << ", Q=" << diamonds << ", v_r=" << recoil_velocity << ")";
  } else {
    msg << "recoil term dominates: fountain height " << height << " m is below the minimum viable height "
        << minimum_viable_height(gravity, diamonds, recoil_velocity) << " m";
  }
  throw DomainError(msg.str());
}

}  // namespace dmgrad
