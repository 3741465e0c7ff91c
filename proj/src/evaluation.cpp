#include "wrsn/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace wrsn {

void validate_path(const ChargingPath& path, const NetworkInstance& instance) {
  const int n = instance.size();
  if (static_cast<int>(path.order.size()) != n)
    throw InvalidArgument("path must visit every sensor exactly once");
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  for (int id : path.order) {
    if (id < 1 || id > n || seen[id])
      throw InvalidArgument("path entry " + std::to_string(id) + " is not a valid unique sensor id");
    seen[id] = 1;
  }
}

PathContext::PathContext(const ChargingPath& path, const NetworkInstance& instance)
    : instance_(&instance), path_(path) {
  validate_path(path_, instance);
  const std::size_t n = path_.order.size();
  const double v = instance.charger.speed;

  travel_prefix_.resize(n + 1);
  int prev = 0;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += instance.distance(prev, path_.order[i]) / v;
    travel_prefix_[i] = acc;
    prev = path_.order[i];
  }
  acc += instance.distance(prev, 0) / v;
  travel_prefix_[n] = acc;
  travel_time_ = acc;

  const ChargerConfig& mc = instance.charger;
  charger_time_budget_ = (mc.battery_capacity - travel_time_ * mc.travel_power) / mc.charge_rate;

  const double sum_p = instance.total_consumption_rate();
  const double sum_e = instance.total_initial_energy();
  double min_energy = 0.0, max_energy = 0.0;
  for (const auto& s : instance.sensors) {
    min_energy += s.e_min;
    max_energy += s.e_max;
  }

  double bound = charger_time_budget_;
  if (mc.charge_rate < sum_p) {
    bound = std::min(bound, (sum_e - min_energy - travel_time_ * sum_p) / (sum_p - mc.charge_rate));
  } else if (mc.charge_rate > sum_p) {
    bound = std::min(bound, (max_energy - sum_e + travel_time_ * sum_p) / (mc.charge_rate - sum_p));
  }
  charging_budget_ = std::max(0.0, bound);
}

EvaluationReport PathContext::evaluate(const std::vector<double>& times,
                                       const EvaluationOptions& options) const {
  const std::size_t n = path_.order.size();
  if (times.size() != n)
    throw InvalidArgument("schedule has " + std::to_string(times.size()) + " dwell times for " +
                          std::to_string(n) + " sensors");
  const NetworkInstance& inst = *instance_;
  const double charge_rate = inst.charger.charge_rate;
  const double period = inst.cycle_period;

  EvaluationReport rep;
  rep.schedule.path = path_;
  rep.schedule.times = times;
  rep.arrival.resize(n);
  rep.energy_at_arrival.resize(n);
  rep.energy_at_depot.resize(n);
  rep.dead.resize(n);
  rep.dead_before.resize(n);
  rep.energy_drop.resize(n);
  rep.lifetime.resize(n);

  double dwell_prefix = 0.0;
  double sum_dead = 0.0;
  double max_drop = 0.0;
  double sum_times = 0.0;
  double battery_span = 0.0;  // homogeneous in generated instances; max keeps f in [0,1]

  for (std::size_t i = 0; i < n; ++i) {
    const SensorNode& s = inst.sensor(path_.order[i]);
    const double a = travel_prefix_[i] + dwell_prefix;
    const double tau = times[i];
    const double at_arrival = s.e_init - a * s.p;
    const double at_depot = options.literal_depot_energy
                                ? s.e_init - period * s.p
                                : s.e_init + tau * charge_rate - period * s.p;
    const bool dead = at_arrival < s.e_min || at_depot < s.e_min;
    const double drop = (!dead && s.e_init > at_depot) ? s.e_init - at_depot : 0.0;

    rep.arrival[i] = a;
    rep.energy_at_arrival[i] = at_arrival;
    rep.energy_at_depot[i] = at_depot;
    rep.dead[i] = dead ? 1 : 0;
    rep.dead_before[i] = at_arrival < s.e_min ? 1 : 0;
    rep.energy_drop[i] = drop;
    rep.lifetime[i] = (s.e_init - s.e_min) / s.p;

    sum_dead += dead ? 1.0 : 0.0;
    max_drop = std::max(max_drop, drop);
    dwell_prefix += tau;
    sum_times += tau;
    battery_span = std::max(battery_span, s.e_max - s.e_min);
  }

  rep.dead_ratio = sum_dead / static_cast<double>(n);
  rep.objective = inst.alpha * rep.dead_ratio + (1.0 - inst.alpha) * max_drop / battery_span;
  rep.travel_time = travel_time_;
  rep.charge_time = sum_times;
  rep.move_energy = travel_time_ * inst.charger.travel_power;
  rep.charge_energy = sum_times * charge_rate;
  rep.violations = check_feasibility(rep.schedule, inst);
  rep.feasible = rep.violations.empty();
  return rep;
}

double PathContext::objective(const std::vector<double>& times) const {
  const std::size_t n = path_.order.size();
  const NetworkInstance& inst = *instance_;
  const double charge_rate = inst.charger.charge_rate;
  const double period = inst.cycle_period;

  double dwell_prefix = 0.0;
  double sum_dead = 0.0;
  double max_drop = 0.0;
  double battery_span = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const SensorNode& s = inst.sensor(path_.order[i]);
    const double a = travel_prefix_[i] + dwell_prefix;
    const double at_arrival = s.e_init - a * s.p;
    const double at_depot = s.e_init + times[i] * charge_rate - period * s.p;
    const bool dead = at_arrival < s.e_min || at_depot < s.e_min;
    if (dead) {
      sum_dead += 1.0;
    } else if (s.e_init > at_depot) {
      max_drop = std::max(max_drop, s.e_init - at_depot);
    }
    dwell_prefix += times[i];
    battery_span = std::max(battery_span, s.e_max - s.e_min);
  }
  return inst.alpha * (sum_dead / static_cast<double>(n)) +
         (1.0 - inst.alpha) * max_drop / battery_span;
}

void PathContext::cap_to_capacity(std::vector<double>& times) const {
  const NetworkInstance& inst = *instance_;
  const double u = inst.charger.charge_rate;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const SensorNode& s = inst.sensor(path_.order[i]);
    if (u > s.p) {
      times[i] = std::min(times[i], (s.e_max - s.e_init) / (u - s.p));
    }
  }
}

std::vector<double> PathContext::greedy_times() const {
  const NetworkInstance& inst = *instance_;
  const std::size_t n = path_.order.size();
  const double sum_p = inst.total_consumption_rate();
  const double sum_e = inst.total_initial_energy();

  std::vector<double> weights(n);
  double sum_w = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const SensorNode& s = inst.sensor(path_.order[i]);
    weights[i] = std::max(0.0, s.p / sum_p - s.e_init / sum_e);
    sum_w += weights[i];
  }

  std::vector<double> times(n);
  if (sum_w > 0.0) {
    for (std::size_t i = 0; i < n; ++i) times[i] = charging_budget_ * weights[i] / sum_w;
  } else {
    const double equal = charging_budget_ / static_cast<double>(n);
    std::fill(times.begin(), times.end(), equal);
  }
  cap_to_capacity(times);
  return times;
}

std::vector<double> PathContext::decode_times(const std::vector<double>& ratios) const {
  const std::size_t n = path_.order.size();
  if (ratios.size() != n) throw InvalidArgument("ratio chromosome length does not match path");
  double sum = 0.0;
  for (double r : ratios) sum += r;

  std::vector<double> times(n);
  if (sum > 0.0) {
    for (std::size_t i = 0; i < n; ++i) times[i] = charging_budget_ * ratios[i] / sum;
  } else {
    const double equal = charging_budget_ / static_cast<double>(n);
    std::fill(times.begin(), times.end(), equal);
  }
  cap_to_capacity(times);
  return times;
}

double travel_time(const ChargingPath& path, const NetworkInstance& instance) {
  return PathContext(path, instance).travel_time();
}

double charging_budget(const ChargingPath& path, const NetworkInstance& instance) {
  return PathContext(path, instance).charging_budget();
}

EvaluationReport evaluate_schedule(const ChargingSchedule& schedule,
                                   const NetworkInstance& instance,
                                   const EvaluationOptions& options) {
  return PathContext(schedule.path, instance).evaluate(schedule.times, options);
}

std::vector<Violation> check_feasibility(const ChargingSchedule& schedule,
                                         const NetworkInstance& instance) {
  validate_path(schedule.path, instance);
  const std::size_t n = schedule.path.order.size();
  if (schedule.times.size() != n)
    throw InvalidArgument("schedule dwell count does not match path length");

  std::vector<Violation> out;
  double sum_times = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double tau = schedule.times[i];
    if (tau < 0.0)
      out.push_back({ConstraintId::kNonNegativeTime, schedule.path.order[i], tau});
    sum_times += tau;
  }

  double tour = 0.0;
  int prev = 0;
  for (int id : schedule.path.order) {
    tour += instance.distance(prev, id);
    prev = id;
  }
  tour += instance.distance(prev, 0);
  const double t_travel = tour / instance.charger.speed;

  const ChargerConfig& mc = instance.charger;
  const double battery_slack =
      mc.battery_capacity - (t_travel * mc.travel_power + sum_times * mc.charge_rate);
  if (battery_slack < 0.0) out.push_back({ConstraintId::kChargerBattery, 0, battery_slack});

  const double period_slack = instance.cycle_period - (t_travel + sum_times);
  if (period_slack < 0.0) out.push_back({ConstraintId::kCyclePeriod, 0, period_slack});

  for (std::size_t i = 0; i < n; ++i) {
    const SensorNode& s = instance.sensor(schedule.path.order[i]);
    const double slack = s.e_max - (s.e_init + schedule.times[i] * (mc.charge_rate - s.p));
    if (slack < 0.0) out.push_back({ConstraintId::kSensorCapacity, s.id, slack});
  }
  return out;
}

ChargingSchedule greedy_time_assignment(const ChargingPath& path,
                                        const NetworkInstance& instance) {
  PathContext ctx(path, instance);
  return ChargingSchedule{path, ctx.greedy_times()};
}

}  // namespace wrsn
