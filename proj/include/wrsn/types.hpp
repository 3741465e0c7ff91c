#ifndef WRSN_TYPES_HPP
#define WRSN_TYPES_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace wrsn {

/// Thrown when a value breaks a documented precondition or invariant.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown on malformed or unreadable instance/schedule/result files.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SensorNode {
  int id = 0;        // 1-based index, contiguous within an instance
  double x = 0.0;    // meters
  double y = 0.0;    // meters
  double e_init = 0.0;  // residual energy at cycle start, joules
  double p = 0.0;       // average consumption rate, joules/second
  double e_max = 0.0;   // battery capacity, joules
  double e_min = 0.0;   // minimum operating level, joules
};

struct ChargerConfig {
  double battery_capacity = 108000.0;  // joules
  double charge_rate = 5.0;            // joules/second while charging
  double travel_power = 1.0;           // joules/second while moving
  double speed = 5.0;                  // meters/second
};

/// First-order radio parameters. The amplifier model switches from the
/// free-space d^2 term to the multi-path d^4 term at threshold_distance().
struct RadioParams {
  double elec_per_bit = 0.05;  // J/bit
  double fs_amp = 0.01;        // J/bit/m^2
  double mp_amp = 1.3e-14;     // J/bit/m^4

  double threshold_distance() const { return std::sqrt(fs_amp / mp_amp); }
};

struct NetworkInstance {
  std::string name;
  double field_width = 500.0;
  double base_x = 250.0;
  double base_y = 250.0;
  double cycle_period = 0.0;  // scheduling period T, seconds
  double alpha = 0.5;         // objective weight between dead ratio and max drop
  ChargerConfig charger;
  std::vector<SensorNode> sensors;

  int size() const { return static_cast<int>(sensors.size()); }

  /// Sensors are stored so that id i sits at index i-1; validate() enforces it.
  const SensorNode& sensor(int id) const { return sensors[static_cast<std::size_t>(id - 1)]; }

  /// Euclidean distance between two nodes; id 0 is the base station.
  double distance(int id_a, int id_b) const {
    const double ax = id_a == 0 ? base_x : sensor(id_a).x;
    const double ay = id_a == 0 ? base_y : sensor(id_a).y;
    const double bx = id_b == 0 ? base_x : sensor(id_b).x;
    const double by = id_b == 0 ? base_y : sensor(id_b).y;
    return std::hypot(ax - bx, ay - by);
  }

  double total_consumption_rate() const {
    double s = 0.0;
    for (const auto& sn : sensors) s += sn.p;
    return s;
  }

  double total_initial_energy() const {
    double s = 0.0;
    for (const auto& sn : sensors) s += sn.e_init;
    return s;
  }

  /// Throws InvalidArgument when any structural invariant is broken.
  void validate() const;
};

}  // namespace wrsn

#endif
