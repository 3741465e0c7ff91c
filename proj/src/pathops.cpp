#include "wrsn/pathops.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

namespace wrsn {

ChargingPath knn_construct(const NetworkInstance& instance, int k, Rng& rng) {
  const int n = instance.size();
  if (k < 1 || k > n) throw InvalidArgument("knn_construct: k must lie in [1, n]");

  std::vector<int> remaining(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) remaining[static_cast<std::size_t>(i)] = i + 1;

  ChargingPath path;
  path.order.reserve(static_cast<std::size_t>(n));
  int current = 0;
  while (!remaining.empty()) {
    const std::size_t pool = std::min<std::size_t>(static_cast<std::size_t>(k), remaining.size());
    std::partial_sort(remaining.begin(), remaining.begin() + static_cast<long>(pool), remaining.end(),
                      [&](int a, int b) {
                        const double da = instance.distance(current, a);
                        const double db = instance.distance(current, b);
                        return da != db ? da < db : a < b;
                      });
    const std::size_t pick = rng.index(pool);
    current = remaining[pick];
    path.order.push_back(current);
    remaining.erase(remaining.begin() + static_cast<long>(pick));
  }
  return path;
}

DeadSets dead_sets(const EvaluationReport& report) {
  DeadSets out;
  const auto& order = report.schedule.path.order;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (report.dead_before[i]) {
      out.dead_before.push_back(order[i]);
    } else if (report.dead[i]) {
      out.dead_after.push_back(order[i]);
    }
  }
  return out;
}

double sensor_lifetime(const SensorNode& sensor) {
  if (sensor.p <= 0.0) throw InvalidArgument("sensor_lifetime: consumption rate must be positive");
  return (sensor.e_init - sensor.e_min) / sensor.p;
}

double tau_max_at(std::size_t position, const ChargingSchedule& schedule,
                  const NetworkInstance& instance) {
  const std::size_t n = schedule.path.order.size();
  if (position >= n) throw InvalidArgument("tau_max_at: position out of range");
  PathContext ctx(schedule.path, instance);
  double dwell = 0.0;
  for (std::size_t j = 0; j < position; ++j) dwell += schedule.times[j];
  const double arrival = ctx.travel_prefix(position) + dwell;
  const SensorNode& s = instance.sensor(schedule.path.order[position]);
  const double u = instance.charger.charge_rate;
  if (u <= s.p) return std::numeric_limits<double>::infinity();
  return (s.e_max - s.e_init + arrival * s.p) / (u - s.p);
}

namespace {

void relocate(std::vector<int>& order, std::size_t from, std::size_t to) {
  const int id = order[from];
  order.erase(order.begin() + static_cast<long>(from));
  order.insert(order.begin() + static_cast<long>(to), id);
}

void apply_move(std::vector<int>& order, std::size_t from, std::size_t to, Rng& rng) {
  if (from == to) return;
  if (rng.chance(0.5)) {
    std::swap(order[from], order[to]);  // two-exchange
  } else {
    relocate(order, from, to);
  }
}

}  // namespace

ChargingPath ls_neighbor(const ChargingSchedule& schedule, const EvaluationReport& report,
                         Rng& rng) {
  const std::size_t n = schedule.path.order.size();
  ChargingPath out = schedule.path;
  if (n < 2) return out;

  std::vector<std::size_t> before, after;  // positions of the dead sensors
  for (std::size_t i = 0; i < n; ++i) {
    if (report.dead_before[i]) {
      before.push_back(i);
    } else if (report.dead[i]) {
      after.push_back(i);
    }
  }

  if (before.empty() && after.empty()) {
    const std::size_t from = rng.index(n);
    std::size_t to = rng.index(n - 1);
    if (to >= from) ++to;  // distinct target so the move always changes the path
    apply_move(out.order, from, to, rng);
    return out;
  }

  const double ratio =
      static_cast<double>(before.size()) / static_cast<double>(before.size() + after.size());
  if (after.empty() || (!before.empty() && rng.uniform01() <= ratio)) {
    // Died waiting: pull it forward, staying within positions the charger
    // reaches before the sensor's unaided lifetime runs out.
    const std::size_t i = before[rng.index(before.size())];
    const double limit = report.lifetime[i];
    std::size_t bound = 0;  // fallback: front of the tour
    bool found = false;
    for (std::size_t q = 0; q < i; ++q) {
      if (report.arrival[q] <= limit) {
        bound = q;  // arrival grows with position, so the last hit is the argmax
        found = true;
      }
    }
    const std::size_t target = found ? rng.index(bound + 1) : 0;
    apply_move(out.order, i, target, rng);
  } else {
    // Died after its visit: push it back so a later arrival raises its
    // admissible dwell, bounded by its lifetime.
    const std::size_t i = after[rng.index(after.size())];
    const double limit = report.lifetime[i];
    std::size_t bound = 0;
    bool found = false;
    for (std::size_t q = i + 1; q < n; ++q) {
      if (report.arrival[q] <= limit) {
        bound = q;
        found = true;
      }
    }
    const std::size_t target = found ? i + 1 + rng.index(bound - i) : n - 1;
    apply_move(out.order, i, target, rng);
  }
  return out;
}

long path_similarity(const ChargingPath& a, const ChargingPath& b) {
  const std::size_t n = a.order.size();
  if (b.order.size() != n) throw InvalidArgument("path_similarity: paths differ in length");

  int max_id = 0;
  for (int id : a.order) max_id = std::max(max_id, id);
  std::vector<long> pos_b(static_cast<std::size_t>(max_id) + 1, -1);
  for (std::size_t j = 0; j < n; ++j) {
    const int id = b.order[j];
    if (id < 1 || id > max_id || pos_b[static_cast<std::size_t>(id)] != -1)
      throw InvalidArgument("path_similarity: paths must share one id set");
    pos_b[static_cast<std::size_t>(id)] = static_cast<long>(j);
  }

  std::vector<long> seq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int id = a.order[i];
    if (id < 1 || id > max_id || pos_b[static_cast<std::size_t>(id)] == -1)
      throw InvalidArgument("path_similarity: paths must share one id set");
    seq[i] = pos_b[static_cast<std::size_t>(id)];
    pos_b[static_cast<std::size_t>(id)] = -1;  // consume to reject duplicates in a
  }

  // Non-inverted pairs = C(n,2) - inversions(seq); merge sort counts inversions.
  std::vector<long> buf(n);
  long inversions = 0;
  const auto merge_count = [&](auto&& self, std::size_t lo, std::size_t hi) -> void {
    if (hi - lo < 2) return;
    const std::size_t mid = lo + (hi - lo) / 2;
    self(self, lo, mid);
    self(self, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
      if (seq[i] <= seq[j]) {
        buf[k++] = seq[i++];
      } else {
        inversions += static_cast<long>(mid - i);
        buf[k++] = seq[j++];
      }
    }
    while (i < mid) buf[k++] = seq[i++];
    while (j < hi) buf[k++] = seq[j++];
    std::copy(buf.begin() + static_cast<long>(lo), buf.begin() + static_cast<long>(hi),
              seq.begin() + static_cast<long>(lo));
  };
  merge_count(merge_count, 0, n);

  const long total = static_cast<long>(n) * (static_cast<long>(n) - 1) / 2;
  return total - inversions;
}

PathEvaluator::PathEvaluator(const NetworkInstance& instance, long budget)
    : instance_(&instance), budget_(budget) {}

namespace {

std::string path_key(const ChargingPath& path) {
  std::string key(path.order.size() * sizeof(int), '\0');
  std::memcpy(key.data(), path.order.data(), key.size());
  return key;
}

}  // namespace

std::optional<double> PathEvaluator::fitness(const ChargingPath& path) {
  if (exhausted()) return std::nullopt;
  ++used_;
  std::string key = path_key(path);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  PathContext ctx(path, *instance_);
  const double f = ctx.objective(ctx.greedy_times());
  cache_.emplace(std::move(key), f);
  return f;
}

EvaluationReport PathEvaluator::report_for(const ChargingPath& path) const {
  PathContext ctx(path, *instance_);
  return ctx.evaluate(ctx.greedy_times());
}

LocalSearchResult ls_optimize(const ChargingPath& start, PathEvaluator& evaluator,
                              int patience, Rng& rng) {
  LocalSearchResult result{start, 0.0};
  const std::optional<double> f0 = evaluator.fitness(start);
  if (!f0) {
    // Budget already exhausted: evaluate out-of-budget once so the caller
    // still receives a meaningful objective for the unchanged path.
    result.objective = PathContext(start, evaluator.instance())
                           .objective(greedy_time_assignment(start, evaluator.instance()).times);
    return result;
  }
  result.objective = *f0;

  EvaluationReport report = evaluator.report_for(result.path);
  int rejects = 0;
  while (rejects < patience && !evaluator.exhausted()) {
    const ChargingPath neighbor = ls_neighbor(report.schedule, report, rng);
    const std::optional<double> f = evaluator.fitness(neighbor);
    if (!f) break;
    if (*f < result.objective) {
      result.path = neighbor;
      result.objective = *f;
      report = evaluator.report_for(result.path);
      rejects = 0;
    } else {
      ++rejects;
    }
  }
  return result;
}

LocalSearchResult ls_optimize(const ChargingPath& start, const NetworkInstance& instance,
                              long budget, int patience, std::uint64_t seed) {
  if (budget < 1) throw InvalidArgument("ls_optimize: budget must be >= 1");
  PathEvaluator evaluator(instance, budget);
  Rng rng(seed);
  return ls_optimize(start, evaluator, patience, rng);
}

}  // namespace wrsn
