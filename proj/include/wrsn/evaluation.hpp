#ifndef WRSN_EVALUATION_HPP
#define WRSN_EVALUATION_HPP

#include <cstdint>
#include <vector>

#include "wrsn/types.hpp"

namespace wrsn {

/// Visit order of the mobile charger. The depot brackets the tour implicitly:
/// the charger departs the base, visits order[0..n-1], and returns to the base.
struct ChargingPath {
  std::vector<int> order;  // each sensor id 1..n exactly once

  bool operator==(const ChargingPath&) const = default;
};

/// A path plus the dwell time spent charging at each visited position.
struct ChargingSchedule {
  ChargingPath path;
  std::vector<double> times;  // seconds, indexed by path position
};

enum class ConstraintId : int {
  kChargerBattery = 3,   // travel energy + delivered energy within E_MC
  kCyclePeriod = 4,      // travel time + charging time within T
  kSensorCapacity = 11,  // charged sensor stays within its battery capacity
  kNonNegativeTime = 12  // dwell times are non-negative
};

struct Violation {
  ConstraintId constraint;
  int sensor_id;  // 0 when the constraint is not per-sensor
  double slack;   // negative amount by which the constraint is missed
};

/// Full outcome of simulating one cycle of a schedule. All per-sensor vectors
/// are indexed by path position (position i describes sensor path.order[i]).
struct EvaluationReport {
  ChargingSchedule schedule;
  std::vector<double> arrival;            // charger arrival times, seconds
  std::vector<double> energy_at_arrival;  // joules, before charging begins
  std::vector<double> energy_at_depot;    // joules at the end of the period
  std::vector<std::uint8_t> dead;         // 1 when the sensor dies this cycle
  std::vector<std::uint8_t> dead_before;  // 1 when it dies before being reached
  std::vector<double> energy_drop;        // per-sensor drop counted by the objective
  std::vector<double> lifetime;           // uncharged survival horizon, seconds
  double objective = 0.0;
  double dead_ratio = 0.0;
  double travel_time = 0.0;
  double charge_time = 0.0;
  double move_energy = 0.0;    // charger energy spent travelling
  double charge_energy = 0.0;  // charger energy delivered to sensors
  bool feasible = true;
  std::vector<Violation> violations;
};

struct EvaluationOptions {
  /// When true, end-of-cycle energy ignores the charged amount (the model's
  /// original closed form). The default accounts for the delivered energy.
  bool literal_depot_energy = false;
};

/// Precomputed per-path quantities shared by every time assignment on the
/// same tour: leg distances, arrival-time prefixes, and the charging budget.
class PathContext {
 public:
  PathContext(const ChargingPath& path, const NetworkInstance& instance);

  const ChargingPath& path() const { return path_; }
  const NetworkInstance& instance() const { return *instance_; }
  double travel_time() const { return travel_time_; }
  double charging_budget() const { return charging_budget_; }
  double charger_time_budget() const { return charger_time_budget_; }

  /// Travel time accumulated before reaching position i (no dwell included).
  double travel_prefix(std::size_t i) const { return travel_prefix_[i]; }

  EvaluationReport evaluate(const std::vector<double>& times,
                            const EvaluationOptions& options = {}) const;

  /// Objective value only; skips report assembly. Identical arithmetic to
  /// evaluate().
  double objective(const std::vector<double>& times) const;

  /// Greedy dwell assignment for this tour (weight-proportional split of the
  /// charging budget, capped so no sensor exceeds its capacity).
  std::vector<double> greedy_times() const;

  /// Dwell vector decoded from ratios in [0,1]; zero-sum ratios fall back to
  /// an equal split. Capped like greedy_times().
  std::vector<double> decode_times(const std::vector<double>& ratios) const;

 private:
  void cap_to_capacity(std::vector<double>& times) const;

  const NetworkInstance* instance_;
  ChargingPath path_;
  std::vector<double> travel_prefix_;  // size n+1; last entry is the full tour
  double travel_time_ = 0.0;
  double charging_budget_ = 0.0;
  double charger_time_budget_ = 0.0;  // (E_MC - travel energy) / U, uncapped
};

/// Closed-tour travel time of a path (depot -> order -> depot) at charger speed.
double travel_time(const ChargingPath& path, const NetworkInstance& instance);

/// Upper bound on total dwell time for a tour: the charger's own battery
/// bound, tightened by the aggregate network energy balance when the charge
/// rate and the total consumption rate differ. Never negative.
double charging_budget(const ChargingPath& path, const NetworkInstance& instance);

EvaluationReport evaluate_schedule(const ChargingSchedule& schedule,
                                   const NetworkInstance& instance,
                                   const EvaluationOptions& options = {});

/// Violated constraints with slack values; empty result means feasible.
std::vector<Violation> check_feasibility(const ChargingSchedule& schedule,
                                         const NetworkInstance& instance);

ChargingSchedule greedy_time_assignment(const ChargingPath& path,
                                        const NetworkInstance& instance);

/// Throws InvalidArgument unless order is a permutation of 1..n.
void validate_path(const ChargingPath& path, const NetworkInstance& instance);

}  // namespace wrsn

#endif
