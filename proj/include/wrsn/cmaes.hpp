#ifndef WRSN_CMAES_HPP
#define WRSN_CMAES_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wrsn/rng.hpp"
#include "wrsn/types.hpp"

namespace wrsn {

/// Default offspring count: floor(4 + 3 ln n).
int default_lambda(int dim);

/// Strategy constants derived from (dim, lambda) the standard way:
/// log-rank recombination weights over the mu = lambda/2 best, cumulation and
/// learning rates for the evolution paths and the rank-one/rank-mu updates.
struct CmaesParams {
  int dim = 0;
  int lambda = 0;
  int mu = 0;
  std::vector<double> weights;  // size mu, positive, sums to 1
  double mueff = 0.0;
  double c_sigma = 0.0;
  double d_sigma = 0.0;
  double c_cov_path = 0.0;  // c_c
  double c_rank_one = 0.0;  // c_1
  double c_rank_mu = 0.0;   // c_mu
  double chi_n = 0.0;       // E||N(0,I)||

  static CmaesParams standard(int dim, int lambda = 0);
};

/// One search distribution over the box [0,1]^dim. ask() samples candidates
/// (clamped into the box); tell() applies the standard rank-mu update with
/// cumulative step-size adaptation. The covariance is kept positive definite
/// by a spectrum clamp whenever its condition number exceeds 1e14.
class CmaesState {
 public:
  CmaesState() = default;
  CmaesState(const CmaesParams& params, const Eigen::VectorXd& mean, double sigma);

  std::vector<Eigen::VectorXd> ask(Rng& rng);
  void tell(const std::vector<Eigen::VectorXd>& candidates, const std::vector<double>& fitness);

  const CmaesParams& params() const { return params_; }
  const Eigen::VectorXd& mean() const { return mean_; }
  double sigma() const { return sigma_; }
  const Eigen::MatrixXd& covariance() const { return cov_; }
  long evaluations() const { return evaluations_; }
  long generations() const { return generations_; }

  bool has_incumbent() const { return has_incumbent_; }
  const Eigen::VectorXd& incumbent() const { return incumbent_; }
  double incumbent_fitness() const { return incumbent_fitness_; }

  /// Lossless JSON round-trip for checkpointing long runs.
  std::string to_json() const;
  static CmaesState from_json(const std::string& text);

  bool operator==(const CmaesState& other) const;

 private:
  void refresh_factor();

  CmaesParams params_;
  Eigen::VectorXd mean_;
  double sigma_ = 0.3;
  Eigen::MatrixXd cov_;
  Eigen::VectorXd path_sigma_;
  Eigen::VectorXd path_cov_;
  long evaluations_ = 0;
  long generations_ = 0;

  Eigen::VectorXd incumbent_;
  double incumbent_fitness_ = 0.0;
  bool has_incumbent_ = false;

  Eigen::MatrixXd factor_;  // lower Cholesky factor of cov_, refreshed by ask()
  bool factor_fresh_ = false;
};

using BoxObjective = std::function<double(const Eigen::VectorXd&)>;

struct McmaesOptions {
  long budget_per_task = 25000;  // objective evaluations per task
  bool transfer = true;          // exchange incumbents across tasks
  int lambda = 0;                // 0 -> default_lambda(dim)
  double sigma0 = 0.3;
  int threads = 1;               // worker threads across tasks

  /// Test hook: observes each task's candidate pool right before evaluation
  /// (after any incumbent injection). Must be thread-safe when threads > 1.
  std::function<void(std::size_t task, long generation,
                     const std::vector<Eigen::VectorXd>& candidates)>
      on_generation;
};

struct McmaesTaskOutcome {
  Eigen::VectorXd best_x;
  double best_f = 0.0;
  long evaluations = 0;
  bool has_best = false;  // false when the budget allowed no full generation
};

/// k concurrent CMA-ES tasks with explicit knowledge transfer: once per
/// generation each task's freshly sampled offspring pool has min(k-1,
/// lambda-1) members replaced by the other tasks' incumbents (as of the
/// generation start), which are then evaluated under this task's objective
/// and ranked normally. With transfer off (or k=1) each task runs exactly
/// like an independent CMA-ES with the same derived seed, regardless of the
/// thread count.
std::vector<McmaesTaskOutcome> mcmaes_optimize(const std::vector<BoxObjective>& objectives,
                                               const std::vector<Eigen::VectorXd>& initial_means,
                                               const McmaesOptions& options, std::uint64_t seed);

}  // namespace wrsn

#endif
