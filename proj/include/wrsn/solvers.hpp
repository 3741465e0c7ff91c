#ifndef WRSN_SOLVERS_HPP
#define WRSN_SOLVERS_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "wrsn/evaluation.hpp"
#include "wrsn/pathops.hpp"
#include "wrsn/rng.hpp"

namespace wrsn {

struct SolverConfig {
  long path_eval_budget = 25000;  // greedy path evaluations for the upper level
  long time_eval_budget = 25000;  // dwell evaluations per lower-level invocation
  int path_population = 100;
  int time_population = 100;
  double crossover_rate = 0.9;
  double mutation_rate = 0.05;
  double sbx_eta = 2.0;
  double pm_eta = 5.0;
  double alpha = std::numeric_limits<double>::quiet_NaN();  // NaN keeps the instance's
  int patience = 50;        // consecutive rejects that end a local search
  bool greedy_init = true;  // false: random initial permutations (convergence study)
  bool cma_transfer = true;
  int threads = 0;  // 0: WRSN_THREADS env var, then hardware

  void validate() const;
};

struct TracePoint {
  long evaluations;  // path + time evaluations consumed when the best improved
  double best_objective;
};

struct SolveResult {
  std::string algorithm;
  std::uint64_t seed = 0;
  ChargingSchedule best_schedule;
  EvaluationReport best_report;
  long path_evaluations = 0;
  long time_evaluations = 0;
  double runtime_seconds = 0.0;
  std::vector<TracePoint> trace;
};

/// GA over charging-time ratios for a fixed path: tournament parents, SBX and
/// polynomial mutation, elitist survival. The population carries one
/// greedy-seeded individual and the returned schedule is never worse than the
/// plain greedy assignment.
ChargingSchedule time_ga_optimize(const ChargingPath& path, const NetworkInstance& instance,
                                  const SolverConfig& config, std::uint64_t seed);

SolveResult mlsga_run(const NetworkInstance& instance, const SolverConfig& config,
                      std::uint64_t seed);

SolveResult mtbcs_run(const NetworkInstance& instance, const SolverConfig& config,
                      std::uint64_t seed);

/// Nearest-neighbor tour with the greedy time split, evaluated once.
SolveResult greedy_baseline(const NetworkInstance& instance, std::uint64_t seed);

SolveResult solve(const std::string& algorithm, const NetworkInstance& instance,
                  const SolverConfig& config, std::uint64_t seed);

std::string results_csv_header();
std::string results_csv_row(const SolveResult& result, const std::string& instance_label);
std::string trace_csv(const SolveResult& result);

/// Worker count: explicit request, else WRSN_THREADS, else the hardware.
int resolve_threads(int requested);

}  // namespace wrsn

#endif
