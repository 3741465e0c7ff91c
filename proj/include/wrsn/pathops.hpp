#ifndef WRSN_PATHOPS_HPP
#define WRSN_PATHOPS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "wrsn/evaluation.hpp"
#include "wrsn/rng.hpp"
#include "wrsn/types.hpp"

namespace wrsn {

/// Sensors that die before the charger reaches them vs. after their visit.
/// A sensor appears in at most one of the two sets.
struct DeadSets {
  std::vector<int> dead_before;  // ids
  std::vector<int> dead_after;   // ids
};

/// Randomized nearest-neighbor construction: from the current location,
/// choose uniformly among the k closest unvisited sensors. k=1 gives the
/// deterministic nearest-neighbor tour.
ChargingPath knn_construct(const NetworkInstance& instance, int k, Rng& rng);

DeadSets dead_sets(const EvaluationReport& report);

/// Remaining lifetime without charging: (e_init - e_min) / p.
double sensor_lifetime(const SensorNode& sensor);

/// Largest dwell at a path position that keeps the sensor within capacity,
/// given its arrival-time energy drain. +infinity when the charge rate does
/// not exceed the sensor's consumption rate (capacity can never bind).
double tau_max_at(std::size_t position, const ChargingSchedule& schedule,
                  const NetworkInstance& instance);

/// One neighborhood move. Dead-before sensors move toward the front of the
/// tour, dead-after sensors toward the back, bounded by the last position
/// whose arrival time stays within the moved sensor's lifetime; with no dead
/// sensors a uniformly random sensor moves to a uniformly random position.
/// Every move is either a relocation or a two-exchange, chosen evenly.
ChargingPath ls_neighbor(const ChargingSchedule& schedule, const EvaluationReport& report,
                         Rng& rng);

/// Concordant ordered pairs between two paths over the same id set:
/// counts pairs appearing in the same relative order in both.
/// Ranges over [0, n(n-1)/2]; subquadratic (merge-sort inversion count).
long path_similarity(const ChargingPath& a, const ChargingPath& b);

/// Greedy-assignment path fitness with memoized results and a hard budget.
/// Every fitness request is charged against the budget, cached or not; the
/// cache only avoids re-simulating duplicate tours.
class PathEvaluator {
 public:
  PathEvaluator(const NetworkInstance& instance, long budget);

  /// Objective of the greedy time assignment; nullopt once the budget is gone.
  std::optional<double> fitness(const ChargingPath& path);

  /// Full report for a path (greedy times). Not charged: only valid for paths
  /// whose fitness has already been paid for.
  EvaluationReport report_for(const ChargingPath& path) const;

  const NetworkInstance& instance() const { return *instance_; }
  long used() const { return used_; }
  long budget() const { return budget_; }
  bool exhausted() const { return used_ >= budget_; }

 private:
  const NetworkInstance* instance_;
  long budget_;
  long used_ = 0;
  std::unordered_map<std::string, double> cache_;
};

struct LocalSearchResult {
  ChargingPath path;
  double objective;
};

/// First-improvement hill climbing over ls_neighbor moves. Stops after
/// `patience` consecutive rejected neighbors or when the evaluator's budget
/// runs out. The returned objective never exceeds the input path's.
LocalSearchResult ls_optimize(const ChargingPath& start, PathEvaluator& evaluator,
                              int patience, Rng& rng);

/// Standalone form with a private budget.
LocalSearchResult ls_optimize(const ChargingPath& start, const NetworkInstance& instance,
                              long budget, int patience, std::uint64_t seed);

}  // namespace wrsn

#endif
