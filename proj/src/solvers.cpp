#include "wrsn/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <thread>

#include "wrsn/cluster.hpp"
#include "wrsn/cmaes.hpp"
#include "wrsn/evo.hpp"

namespace wrsn {

void SolverConfig::validate() const {
  if (path_eval_budget < 1 || time_eval_budget < 1)
    throw InvalidArgument("solver config: budgets must be >= 1");
  if (path_population < 2 || time_population < 2)
    throw InvalidArgument("solver config: population sizes must be >= 2");
  if (crossover_rate < 0.0 || crossover_rate > 1.0 || mutation_rate < 0.0 || mutation_rate > 1.0)
    throw InvalidArgument("solver config: rates must lie in [0,1]");
  if (sbx_eta <= 0.0 || pm_eta <= 0.0)
    throw InvalidArgument("solver config: distribution indices must be positive");
  if (!std::isnan(alpha) && (alpha < 0.0 || alpha > 1.0))
    throw InvalidArgument("solver config: alpha outside [0,1]");
  if (patience < 1) throw InvalidArgument("solver config: patience must be >= 1");
  if (threads < 0) throw InvalidArgument("solver config: threads must be >= 0");
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("WRSN_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

NetworkInstance apply_alpha(const NetworkInstance& instance, double alpha) {
  if (std::isnan(alpha)) return instance;
  NetworkInstance copy = instance;
  copy.alpha = alpha;
  return copy;
}

/// Best-so-far schedule plus the improvement trace over combined evaluations.
struct BestTracker {
  double best_f = std::numeric_limits<double>::infinity();
  ChargingSchedule best;
  bool has_best = false;
  std::vector<TracePoint> trace;

  void offer(double f, const ChargingSchedule& schedule, long evals_now) {
    if (!has_best || f < best_f) {
      best_f = f;
      best = schedule;
      has_best = true;
      trace.push_back({evals_now, f});
    }
  }
};

std::vector<double> greedy_ratios(const PathContext& ctx) {
  std::vector<double> times = ctx.greedy_times();
  const double sum = std::accumulate(times.begin(), times.end(), 0.0);
  if (sum <= 0.0) return std::vector<double>(times.size(), 0.0);
  for (double& t : times) t /= sum;
  return times;
}

/// Time GA inner loop shared by the public op and MLSGA. Reports consumed
/// evaluations and offers every improvement to the tracker.
void time_ga_inner(const PathContext& ctx, const SolverConfig& config, Rng& rng,
                   long& time_evals, long path_evals_so_far, BestTracker& tracker) {
  const std::size_t n = ctx.path().order.size();
  const int pop_size = config.time_population;
  const long budget = config.time_eval_budget;
  long used = 0;
  const double pm_rate = std::max(1.0 / static_cast<double>(n), 0.05);

  const auto combined = [&] { return path_evals_so_far + time_evals + used; };

  // The plain greedy schedule anchors the incumbent.
  std::vector<double> greedy = ctx.greedy_times();
  double greedy_f = ctx.objective(greedy);
  ++used;
  tracker.offer(greedy_f, ChargingSchedule{ctx.path(), greedy}, combined());

  std::vector<TimeChromosome> pop;
  std::vector<double> fit;
  pop.reserve(static_cast<std::size_t>(pop_size));
  fit.reserve(static_cast<std::size_t>(pop_size));

  pop.push_back(greedy_ratios(ctx));
  for (int i = 1; i < pop_size; ++i) {
    TimeChromosome c(n);
    for (double& g : c) g = rng.uniform01();
    pop.push_back(std::move(c));
  }
  for (auto& c : pop) {
    if (used >= budget) break;
    const std::vector<double> times = ctx.decode_times(c);
    const double f = ctx.objective(times);
    ++used;
    fit.push_back(f);
    tracker.offer(f, ChargingSchedule{ctx.path(), times}, combined());
  }
  pop.resize(fit.size());

  while (used < budget && !pop.empty()) {
    std::vector<TimeChromosome> children;
    children.reserve(static_cast<std::size_t>(pop_size));
    while (static_cast<int>(children.size()) < pop_size) {
      const std::size_t a = tournament_select(fit, 2, rng);
      const std::size_t b = tournament_select(fit, 2, rng);
      auto [c1, c2] = sbx_crossover(pop[a], pop[b], config.sbx_eta, config.crossover_rate, rng);
      children.push_back(poly_mutation(c1, config.pm_eta, pm_rate, rng));
      if (static_cast<int>(children.size()) < pop_size)
        children.push_back(poly_mutation(c2, config.pm_eta, pm_rate, rng));
    }

    std::vector<double> child_fit;
    child_fit.reserve(children.size());
    for (auto& c : children) {
      if (used >= budget) break;
      const std::vector<double> times = ctx.decode_times(c);
      const double f = ctx.objective(times);
      ++used;
      child_fit.push_back(f);
      tracker.offer(f, ChargingSchedule{ctx.path(), times}, combined());
    }
    children.resize(child_fit.size());

    // Elitist survival: keep the pop_size fittest of parents plus children.
    for (std::size_t i = 0; i < children.size(); ++i) {
      pop.push_back(std::move(children[i]));
      fit.push_back(child_fit[i]);
    }
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return fit[x] < fit[y]; });
    std::vector<TimeChromosome> next_pop;
    std::vector<double> next_fit;
    const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(pop_size), order.size());
    for (std::size_t i = 0; i < keep; ++i) {
      next_pop.push_back(std::move(pop[order[i]]));
      next_fit.push_back(fit[order[i]]);
    }
    pop = std::move(next_pop);
    fit = std::move(next_fit);
  }
  time_evals += used;
}

EvaluationReport final_report(const ChargingSchedule& schedule, const NetworkInstance& instance) {
  return evaluate_schedule(schedule, instance);
}

ChargingPath random_permutation(int n, Rng& rng) {
  ChargingPath p;
  p.order.resize(static_cast<std::size_t>(n));
  std::iota(p.order.begin(), p.order.end(), 1);
  for (std::size_t i = p.order.size(); i > 1; --i) {
    const std::size_t j = rng.index(i);
    std::swap(p.order[i - 1], p.order[j]);
  }
  return p;
}

ChargingPath construct_initial_path(const NetworkInstance& inst, bool greedy, Rng& rng) {
  const int n = inst.size();
  if (!greedy) return random_permutation(n, rng);
  const int k = n < 2 ? 1 : static_cast<int>(rng.uniform_int(2, n));
  return knn_construct(inst, k, rng);
}

}  // namespace

ChargingSchedule time_ga_optimize(const ChargingPath& path, const NetworkInstance& instance,
                                  const SolverConfig& config, std::uint64_t seed) {
  config.validate();
  const NetworkInstance inst = apply_alpha(instance, config.alpha);
  PathContext ctx(path, inst);
  Rng rng(seed);
  BestTracker tracker;
  long time_evals = 0;
  time_ga_inner(ctx, config, rng, time_evals, 0, tracker);
  return tracker.best;
}

SolveResult mlsga_run(const NetworkInstance& instance, const SolverConfig& config,
                      std::uint64_t seed) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const NetworkInstance inst = apply_alpha(instance, config.alpha);
  inst.validate();

  Rng rng(derive_seed(seed, 0x6d15));
  PathEvaluator evaluator(inst, config.path_eval_budget);
  BestTracker tracker;
  long time_evals = 0;

  while (!evaluator.exhausted()) {
    const ChargingPath start_path = construct_initial_path(inst, config.greedy_init, rng);
    const LocalSearchResult ls = ls_optimize(start_path, evaluator, config.patience, rng);
    PathContext ctx(ls.path, inst);
    time_ga_inner(ctx, config, rng, time_evals, evaluator.used(), tracker);
  }

  SolveResult result;
  result.algorithm = "mlsga";
  result.seed = seed;
  result.best_schedule = tracker.best;
  result.best_report = final_report(tracker.best, inst);
  result.path_evaluations = evaluator.used();
  result.time_evaluations = time_evals;
  result.trace = std::move(tracker.trace);
  result.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SolveResult mtbcs_run(const NetworkInstance& instance, const SolverConfig& config,
                      std::uint64_t seed) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const NetworkInstance inst = apply_alpha(instance, config.alpha);
  inst.validate();

  const int n = inst.size();
  const int pop_size = config.path_population;
  const int lambda = default_lambda(n);
  const int clusters = static_cast<int>(
      (pop_size + lambda - 1) / lambda);  // ceil(N / lambda) tasks for the lower level

  Rng rng(derive_seed(seed, 0x3b7c));
  PathEvaluator evaluator(inst, config.path_eval_budget);
  BestTracker tracker;
  long time_evals = 0;
  const int threads = resolve_threads(config.threads);

  const auto offer_path = [&](const ChargingPath& path, double f) {
    if (!tracker.has_best || f < tracker.best_f) {
      tracker.offer(f, evaluator.report_for(path).schedule, evaluator.used() + time_evals);
    }
  };

  std::vector<ChargingPath> pop;
  std::vector<double> fit;
  pop.reserve(static_cast<std::size_t>(pop_size));
  fit.reserve(static_cast<std::size_t>(pop_size));
  for (int i = 0; i < pop_size; ++i) {
    ChargingPath p = construct_initial_path(inst, config.greedy_init, rng);
    const auto f = evaluator.fitness(p);
    if (!f) break;
    offer_path(p, *f);
    pop.push_back(std::move(p));
    fit.push_back(*f);
  }

  while (!evaluator.exhausted() && !pop.empty()) {
    std::vector<ChargingPath> children;
    std::vector<double> child_fit;
    children.reserve(static_cast<std::size_t>(pop_size));
    bool out_of_budget = false;

    while (static_cast<int>(children.size()) < pop_size && !out_of_budget) {
      const std::size_t a = tournament_select(fit, 2, rng);
      const std::size_t b = tournament_select(fit, 2, rng);
      std::pair<ChargingPath, ChargingPath> bred =
          rng.chance(config.crossover_rate) ? pmx_crossover(pop[a], pop[b], rng)
                                            : std::make_pair(pop[a], pop[b]);
      ChargingPath kids[2] = {std::move(bred.first), std::move(bred.second)};
      for (auto& kid : kids) {
        if (static_cast<int>(children.size()) >= pop_size) break;
        kid = swap_mutation(kid, config.mutation_rate, rng);
        auto f = evaluator.fitness(kid);
        if (!f) {
          out_of_budget = true;
          break;
        }
        offer_path(kid, *f);
        // Offspring beating both parents earn a local search.
        if (*f < fit[a] && *f < fit[b]) {
          const LocalSearchResult ls = ls_optimize(kid, evaluator, config.patience, rng);
          kid = ls.path;
          f = ls.objective;
          offer_path(kid, *f);
        }
        children.push_back(std::move(kid));
        child_fit.push_back(*f);
      }
    }

    // Elitist survival over parents plus whatever offspring fit the budget.
    for (std::size_t i = 0; i < children.size(); ++i) {
      pop.push_back(std::move(children[i]));
      fit.push_back(child_fit[i]);
    }
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return fit[x] < fit[y]; });
    std::vector<ChargingPath> next_pop;
    std::vector<double> next_fit;
    const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(pop_size), order.size());
    for (std::size_t i = 0; i < keep; ++i) {
      next_pop.push_back(std::move(pop[order[i]]));
      next_fit.push_back(fit[order[i]]);
    }
    pop = std::move(next_pop);
    fit = std::move(next_fit);

    if (out_of_budget) break;  // partial generation: skip the lower level

    // Lower level: cluster the survivors, optimize the representatives' times.
    const int k = std::min<int>(clusters, static_cast<int>(pop.size()));
    const DistanceMatrix dm = distance_matrix(pop);
    const PamResult pam = pam_cluster(dm, k);
    const std::vector<std::size_t> reps = representatives(fit, pam);

    std::vector<PathContext> contexts;
    std::vector<BoxObjective> objectives;
    std::vector<Eigen::VectorXd> means;
    contexts.reserve(reps.size());
    for (std::size_t r : reps) contexts.emplace_back(pop[r], inst);
    for (const PathContext& ctx : contexts) {
      objectives.push_back([&ctx, n](const Eigen::VectorXd& x) {
        std::vector<double> ratios(x.data(), x.data() + n);
        return ctx.objective(ctx.decode_times(ratios));
      });
      const std::vector<double> seed_ratios = greedy_ratios(ctx);
      means.push_back(Eigen::Map<const Eigen::VectorXd>(seed_ratios.data(), n));
    }

    McmaesOptions opts;
    opts.budget_per_task = config.time_eval_budget / static_cast<long>(reps.size());
    opts.transfer = config.cma_transfer;
    opts.lambda = lambda;
    opts.threads = threads;
    const std::vector<McmaesTaskOutcome> outcomes =
        mcmaes_optimize(objectives, means, opts, rng.next_u64());

    for (std::size_t t = 0; t < outcomes.size(); ++t) {
      time_evals += outcomes[t].evaluations;
      if (!outcomes[t].has_best) continue;
      const std::vector<double> ratios(outcomes[t].best_x.data(), outcomes[t].best_x.data() + n);
      const std::vector<double> times = contexts[t].decode_times(ratios);
      tracker.offer(outcomes[t].best_f, ChargingSchedule{contexts[t].path(), times},
                    evaluator.used() + time_evals);
    }
  }

  SolveResult result;
  result.algorithm = "mtbcs";
  result.seed = seed;
  result.best_schedule = tracker.best;
  result.best_report = final_report(tracker.best, inst);
  result.path_evaluations = evaluator.used();
  result.time_evaluations = time_evals;
  result.trace = std::move(tracker.trace);
  result.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SolveResult greedy_baseline(const NetworkInstance& instance, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  instance.validate();
  Rng rng(derive_seed(seed, 0x9e1f));
  const ChargingPath tour = knn_construct(instance, 1, rng);
  const ChargingSchedule schedule = greedy_time_assignment(tour, instance);
  const EvaluationReport report = evaluate_schedule(schedule, instance);

  SolveResult result;
  result.algorithm = "greedy";
  result.seed = seed;
  result.best_schedule = schedule;
  result.best_report = report;
  result.path_evaluations = 1;
  result.time_evaluations = 0;
  result.trace = {{1, report.objective}};
  result.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SolveResult solve(const std::string& algorithm, const NetworkInstance& instance,
                  const SolverConfig& config, std::uint64_t seed) {
  if (algorithm == "mlsga") return mlsga_run(instance, config, seed);
  if (algorithm == "mtbcs") return mtbcs_run(instance, config, seed);
  if (algorithm == "greedy") return greedy_baseline(instance, seed);
  throw InvalidArgument("unknown algorithm '" + algorithm + "' (expected mlsga|mtbcs|greedy)");
}

std::string results_csv_header() {
  return "instance,algorithm,seed,evals_path,evals_time,dead_ratio,objective,runtime_s";
}

std::string results_csv_row(const SolveResult& result, const std::string& instance_label) {
  char dead[32], obj[64], rt[32];
  std::snprintf(dead, sizeof dead, "%.2f", result.best_report.dead_ratio * 100.0);
  std::snprintf(obj, sizeof obj, "%.12g", result.best_report.objective);
  std::snprintf(rt, sizeof rt, "%.3f", result.runtime_seconds);
  std::ostringstream row;
  row << instance_label << ',' << result.algorithm << ',' << result.seed << ','
      << result.path_evaluations << ',' << result.time_evaluations << ',' << dead << ',' << obj
      << ',' << rt;
  return row.str();
}

std::string trace_csv(const SolveResult& result) {
  std::ostringstream out;
  out << "eval_count,best_f\n";
  char buf[64];
  for (const TracePoint& p : result.trace) {
    std::snprintf(buf, sizeof buf, "%.12g", p.best_objective);
    out << p.evaluations << ',' << buf << '\n';
  }
  return out.str();
}

}  // namespace wrsn
