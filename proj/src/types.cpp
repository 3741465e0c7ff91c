#include "wrsn/types.hpp"

#include <cmath>
#include <string>

namespace wrsn {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidArgument(what);
}

}  // namespace

void NetworkInstance::validate() const {
  require(!sensors.empty(), "instance must contain at least one sensor");
  require(field_width > 0.0, "field_width must be positive");
  require(cycle_period > 0.0, "cycle period T must be positive");
  require(alpha >= 0.0 && alpha <= 1.0, "alpha must lie in [0,1]");
  require(charger.battery_capacity > 0.0, "charger battery capacity must be positive");
  require(charger.charge_rate > 0.0, "charger charge rate must be positive");
  require(charger.travel_power > 0.0, "charger travel power must be positive");
  require(charger.speed > 0.0, "charger speed must be positive");

  for (std::size_t i = 0; i < sensors.size(); ++i) {
    const SensorNode& s = sensors[i];
    const std::string tag = "sensor " + std::to_string(s.id) + ": ";
    require(s.id == static_cast<int>(i) + 1, "sensor ids must be 1..n in order");
    require(s.e_min >= 0.0 && s.e_min < s.e_max, tag + "requires 0 <= e_min < e_max");
    require(s.e_init >= s.e_min && s.e_init <= s.e_max, tag + "e_init outside [e_min, e_max]");
    require(s.p > 0.0, tag + "consumption rate must be positive");
    require(s.x >= 0.0 && s.x <= field_width && s.y >= 0.0 && s.y <= field_width,
            tag + "coordinates outside the field");
    require(std::isfinite(s.x) && std::isfinite(s.y), tag + "non-finite coordinates");
  }
}

}  // namespace wrsn
