#include "wrsn/cmaes.hpp"

#include <algorithm>
#include <barrier>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include <json.hpp>

namespace wrsn {

int default_lambda(int dim) {
  if (dim < 1) throw InvalidArgument("default_lambda: dimension must be positive");
  return static_cast<int>(std::floor(4.0 + 3.0 * std::log(static_cast<double>(dim))));
}

CmaesParams CmaesParams::standard(int dim, int lambda) {
  if (dim < 1) throw InvalidArgument("cmaes: dimension must be positive");
  CmaesParams p;
  p.dim = dim;
  p.lambda = lambda > 0 ? lambda : default_lambda(dim);
  if (p.lambda < 2) p.lambda = 2;
  p.mu = p.lambda / 2;

  p.weights.resize(static_cast<std::size_t>(p.mu));
  double sum = 0.0;
  for (int i = 0; i < p.mu; ++i) {
    p.weights[static_cast<std::size_t>(i)] =
        std::log(p.mu + 0.5) - std::log(static_cast<double>(i + 1));
    sum += p.weights[static_cast<std::size_t>(i)];
  }
  double sq = 0.0;
  for (auto& w : p.weights) {
    w /= sum;
    sq += w * w;
  }
  p.mueff = 1.0 / sq;

  const double n = dim;
  p.c_sigma = (p.mueff + 2.0) / (n + p.mueff + 5.0);
  p.d_sigma = 1.0 + 2.0 * std::max(0.0, std::sqrt((p.mueff - 1.0) / (n + 1.0)) - 1.0) + p.c_sigma;
  p.c_cov_path = (4.0 + p.mueff / n) / (n + 4.0 + 2.0 * p.mueff / n);
  p.c_rank_one = 2.0 / ((n + 1.3) * (n + 1.3) + p.mueff);
  p.c_rank_mu = std::min(1.0 - p.c_rank_one,
                         2.0 * (p.mueff - 2.0 + 1.0 / p.mueff) / ((n + 2.0) * (n + 2.0) + p.mueff));
  p.chi_n = std::sqrt(n) * (1.0 - 1.0 / (4.0 * n) + 1.0 / (21.0 * n * n));
  return p;
}

CmaesState::CmaesState(const CmaesParams& params, const Eigen::VectorXd& mean, double sigma)
    : params_(params),
      mean_(mean),
      sigma_(sigma),
      cov_(Eigen::MatrixXd::Identity(params.dim, params.dim)),
      path_sigma_(Eigen::VectorXd::Zero(params.dim)),
      path_cov_(Eigen::VectorXd::Zero(params.dim)) {
  if (mean.size() != params.dim) throw InvalidArgument("cmaes: mean dimension mismatch");
  if (sigma <= 0.0) throw InvalidArgument("cmaes: sigma must be positive");
}

void CmaesState::refresh_factor() {
  Eigen::LLT<Eigen::MatrixXd> llt(cov_);
  bool need_repair = llt.info() != Eigen::Success;
  if (!need_repair) {
    const Eigen::VectorXd diag = llt.matrixLLT().diagonal();
    const double dmax = diag.maxCoeff();
    const double dmin = diag.minCoeff();
    need_repair = !(dmin > 0.0) || dmax * dmax > 1e14 * dmin * dmin;
  }
  if (need_repair) {
    // Clamp the spectrum so the condition number stays within 1e14.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov_);
    Eigen::VectorXd ev = es.eigenvalues();
    const double top = std::max(ev.maxCoeff(), 1e-300);
    const double floor_ev = top / 1e14;
    for (int i = 0; i < ev.size(); ++i) ev(i) = std::max(ev(i), floor_ev);
    cov_ = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
    cov_ = 0.5 * (cov_ + cov_.transpose().eval());
    llt.compute(cov_);
  }
  factor_ = llt.matrixL();
  factor_fresh_ = true;
}

std::vector<Eigen::VectorXd> CmaesState::ask(Rng& rng) {
  refresh_factor();
  std::vector<Eigen::VectorXd> out;
  out.reserve(static_cast<std::size_t>(params_.lambda));
  Eigen::VectorXd z(params_.dim);
  for (int c = 0; c < params_.lambda; ++c) {
    for (int i = 0; i < params_.dim; ++i) z(i) = rng.normal01();
    Eigen::VectorXd x = mean_ + sigma_ * (factor_ * z);
    for (int i = 0; i < params_.dim; ++i) x(i) = std::clamp(x(i), 0.0, 1.0);
    out.push_back(std::move(x));
  }
  return out;
}

void CmaesState::tell(const std::vector<Eigen::VectorXd>& candidates,
                      const std::vector<double>& fitness) {
  const int lambda = params_.lambda;
  if (static_cast<int>(candidates.size()) != lambda || fitness.size() != candidates.size())
    throw InvalidArgument("cmaes: tell() expects exactly lambda candidates with fitness");
  if (!factor_fresh_) refresh_factor();

  evaluations_ += lambda;
  ++generations_;

  std::vector<int> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const bool na = std::isnan(fitness[static_cast<std::size_t>(a)]);
    const bool nb = std::isnan(fitness[static_cast<std::size_t>(b)]);
    if (na != nb) return nb;  // NaN ranks last
    if (na && nb) return false;
    return fitness[static_cast<std::size_t>(a)] < fitness[static_cast<std::size_t>(b)];
  });

  int valid = 0;
  for (std::size_t i = 0; i < fitness.size(); ++i)
    if (!std::isnan(fitness[i])) ++valid;
  if (valid == 0) return;

  const int best_i = order.front();
  if (!has_incumbent_ || fitness[static_cast<std::size_t>(best_i)] < incumbent_fitness_) {
    incumbent_ = candidates[static_cast<std::size_t>(best_i)];
    incumbent_fitness_ = fitness[static_cast<std::size_t>(best_i)];
    has_incumbent_ = true;
  }

  const int mu_used = std::min(params_.mu, valid);
  if (mu_used < 1) return;
  double wsum = 0.0;
  for (int i = 0; i < mu_used; ++i) wsum += params_.weights[static_cast<std::size_t>(i)];

  const Eigen::VectorXd mean_old = mean_;
  Eigen::VectorXd y_w = Eigen::VectorXd::Zero(params_.dim);
  std::vector<Eigen::VectorXd> steps(static_cast<std::size_t>(mu_used));
  for (int i = 0; i < mu_used; ++i) {
    steps[static_cast<std::size_t>(i)] =
        (candidates[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] - mean_old) /
        sigma_;
    y_w += (params_.weights[static_cast<std::size_t>(i)] / wsum) * steps[static_cast<std::size_t>(i)];
  }

  mean_ = mean_old + sigma_ * y_w;

  // Whitened mean step via the same factor the candidates were drawn with.
  const Eigen::VectorXd whitened =
      factor_.triangularView<Eigen::Lower>().solve(y_w);

  const double cs = params_.c_sigma;
  path_sigma_ = (1.0 - cs) * path_sigma_ + std::sqrt(cs * (2.0 - cs) * params_.mueff) * whitened;

  const double expected_decay =
      std::sqrt(1.0 - std::pow(1.0 - cs, 2.0 * static_cast<double>(generations_)));
  const bool hsig = path_sigma_.norm() / expected_decay <
                    (1.4 + 2.0 / (params_.dim + 1.0)) * params_.chi_n;

  const double cc = params_.c_cov_path;
  path_cov_ = (1.0 - cc) * path_cov_ +
              (hsig ? std::sqrt(cc * (2.0 - cc) * params_.mueff) : 0.0) * y_w;

  const double c1 = params_.c_rank_one;
  const double cmu = params_.c_rank_mu;
  // The stalled-path correction c1*(1-hsig)*cc*(2-cc)*C folds into the decay.
  const double decay = 1.0 - c1 - cmu + (hsig ? 0.0 : c1 * cc * (2.0 - cc));
  cov_ *= decay;
  cov_.selfadjointView<Eigen::Lower>().rankUpdate(path_cov_, c1);
  for (int i = 0; i < mu_used; ++i) {
    cov_.selfadjointView<Eigen::Lower>().rankUpdate(
        steps[static_cast<std::size_t>(i)], cmu * params_.weights[static_cast<std::size_t>(i)] / wsum);
  }
  for (int i = 0; i < params_.dim; ++i)
    for (int j = i + 1; j < params_.dim; ++j) cov_(i, j) = cov_(j, i);

  sigma_ *= std::exp((cs / params_.d_sigma) * (path_sigma_.norm() / params_.chi_n - 1.0));
  sigma_ = std::clamp(sigma_, 1e-300, 1e12);
  factor_fresh_ = false;
}

std::string CmaesState::to_json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["dim"] = params_.dim;
  j["lambda"] = params_.lambda;
  j["mu"] = params_.mu;
  j["weights"] = params_.weights;
  j["mueff"] = params_.mueff;
  j["c_sigma"] = params_.c_sigma;
  j["d_sigma"] = params_.d_sigma;
  j["c_cov_path"] = params_.c_cov_path;
  j["c_rank_one"] = params_.c_rank_one;
  j["c_rank_mu"] = params_.c_rank_mu;
  j["chi_n"] = params_.chi_n;
  const auto vec = [](const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
  };
  j["mean"] = vec(mean_);
  j["sigma"] = sigma_;
  std::vector<double> cov(cov_.data(), cov_.data() + cov_.size());
  j["cov"] = cov;
  j["path_sigma"] = vec(path_sigma_);
  j["path_cov"] = vec(path_cov_);
  j["evaluations"] = evaluations_;
  j["generations"] = generations_;
  j["has_incumbent"] = has_incumbent_;
  if (has_incumbent_) {
    j["incumbent"] = vec(incumbent_);
    j["incumbent_fitness"] = incumbent_fitness_;
  }
  return j.dump();
}

CmaesState CmaesState::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("cmaes checkpoint: ") + e.what());
  }
  CmaesState s;
  s.params_.dim = j.at("dim").get<int>();
  s.params_.lambda = j.at("lambda").get<int>();
  s.params_.mu = j.at("mu").get<int>();
  s.params_.weights = j.at("weights").get<std::vector<double>>();
  s.params_.mueff = j.at("mueff").get<double>();
  s.params_.c_sigma = j.at("c_sigma").get<double>();
  s.params_.d_sigma = j.at("d_sigma").get<double>();
  s.params_.c_cov_path = j.at("c_cov_path").get<double>();
  s.params_.c_rank_one = j.at("c_rank_one").get<double>();
  s.params_.c_rank_mu = j.at("c_rank_mu").get<double>();
  s.params_.chi_n = j.at("chi_n").get<double>();
  const auto vec = [&](const char* name) {
    const auto v = j.at(name).get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<long>(v.size())).eval();
  };
  s.mean_ = vec("mean");
  s.sigma_ = j.at("sigma").get<double>();
  const auto cov = j.at("cov").get<std::vector<double>>();
  s.cov_ = Eigen::Map<const Eigen::MatrixXd>(cov.data(), s.params_.dim, s.params_.dim);
  s.path_sigma_ = vec("path_sigma");
  s.path_cov_ = vec("path_cov");
  s.evaluations_ = j.at("evaluations").get<long>();
  s.generations_ = j.at("generations").get<long>();
  s.has_incumbent_ = j.at("has_incumbent").get<bool>();
  if (s.has_incumbent_) {
    s.incumbent_ = vec("incumbent");
    s.incumbent_fitness_ = j.at("incumbent_fitness").get<double>();
  }
  return s;
}

bool CmaesState::operator==(const CmaesState& other) const {
  return params_.dim == other.params_.dim && params_.lambda == other.params_.lambda &&
         params_.mu == other.params_.mu && params_.weights == other.params_.weights &&
         mean_ == other.mean_ && sigma_ == other.sigma_ && cov_ == other.cov_ &&
         path_sigma_ == other.path_sigma_ && path_cov_ == other.path_cov_ &&
         evaluations_ == other.evaluations_ && generations_ == other.generations_ &&
         has_incumbent_ == other.has_incumbent_ &&
         (!has_incumbent_ ||
          (incumbent_ == other.incumbent_ && incumbent_fitness_ == other.incumbent_fitness_));
}

namespace {

struct TaskRuntime {
  CmaesState state;
  Rng rng;
  long budget;
};

}  // namespace

std::vector<McmaesTaskOutcome> mcmaes_optimize(const std::vector<BoxObjective>& objectives,
                                               const std::vector<Eigen::VectorXd>& initial_means,
                                               const McmaesOptions& options, std::uint64_t seed) {
  const std::size_t k = objectives.size();
  if (k == 0) throw InvalidArgument("mcmaes: at least one task required");
  if (initial_means.size() != k) throw InvalidArgument("mcmaes: one initial mean per task required");
  const int dim = static_cast<int>(initial_means.front().size());
  for (const auto& m : initial_means)
    if (m.size() != dim) throw InvalidArgument("mcmaes: all tasks must share one dimension");

  const CmaesParams params = CmaesParams::standard(dim, options.lambda);
  const int lambda = params.lambda;

  std::vector<TaskRuntime> tasks;
  tasks.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    tasks.push_back(TaskRuntime{CmaesState(params, initial_means[i], options.sigma0),
                                Rng(derive_seed(seed, i)), options.budget_per_task});
  }

  const long generations = options.budget_per_task / lambda;
  const int transfer_count =
      options.transfer ? static_cast<int>(std::min<std::size_t>(k - 1, lambda - 1)) : 0;

  // Incumbent snapshot taken at each generation boundary; tasks never read
  // each other's live state, so any thread count yields identical results.
  std::vector<std::pair<bool, Eigen::VectorXd>> snapshot(k, {false, Eigen::VectorXd()});
  std::vector<double> snapshot_fitness(k, 0.0);

  const auto rebuild_snapshot = [&] {
    for (std::size_t i = 0; i < k; ++i) {
      snapshot[i].first = tasks[i].state.has_incumbent();
      if (snapshot[i].first) {
        snapshot[i].second = tasks[i].state.incumbent();
        snapshot_fitness[i] = tasks[i].state.incumbent_fitness();
      }
    }
  };

  const auto step_task = [&](std::size_t i) {
    TaskRuntime& t = tasks[i];
    std::vector<Eigen::VectorXd> candidates = t.state.ask(t.rng);

    if (transfer_count > 0) {
      // Donors: the other tasks with an incumbent, best fitness first.
      std::vector<std::size_t> donors;
      for (std::size_t j = 0; j < k; ++j)
        if (j != i && snapshot[j].first) donors.push_back(j);
      std::sort(donors.begin(), donors.end(), [&](std::size_t a, std::size_t b) {
        return snapshot_fitness[a] != snapshot_fitness[b] ? snapshot_fitness[a] < snapshot_fitness[b]
                                                          : a < b;
      });
      const std::size_t inject = std::min<std::size_t>(donors.size(),
                                                       static_cast<std::size_t>(transfer_count));
      if (inject > 0) {
        // Distinct offspring slots, uniformly chosen (partial Fisher-Yates).
        std::vector<std::size_t> slots(static_cast<std::size_t>(lambda));
        std::iota(slots.begin(), slots.end(), 0);
        for (std::size_t s = 0; s < inject; ++s) {
          const std::size_t r = s + t.rng.index(slots.size() - s);
          std::swap(slots[s], slots[r]);
          candidates[slots[s]] = snapshot[donors[s]].second;
        }
      }
    }

    if (options.on_generation) options.on_generation(i, tasks[i].state.generations(), candidates);
    std::vector<double> fitness(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) fitness[c] = objectives[i](candidates[c]);
    t.state.tell(candidates, fitness);
  };

  int thread_count = std::max(1, options.threads);
  thread_count = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(thread_count), k));

  if (thread_count == 1 || k == 1) {
    for (long g = 0; g < generations; ++g) {
      rebuild_snapshot();
      for (std::size_t i = 0; i < k; ++i) step_task(i);
    }
  } else {
    long generation = 0;
    std::barrier sync(thread_count, [&]() noexcept {
      rebuild_snapshot();
      ++generation;
    });
    rebuild_snapshot();
    const auto worker = [&](int t) {
      while (true) {
        const long g = generation;
        if (g >= generations) break;
        for (std::size_t i = static_cast<std::size_t>(t); i < k;
             i += static_cast<std::size_t>(thread_count))
          step_task(i);
        sync.arrive_and_wait();
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  std::vector<McmaesTaskOutcome> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    out[i].evaluations = tasks[i].state.evaluations();
    out[i].has_best = tasks[i].state.has_incumbent();
    if (out[i].has_best) {
      out[i].best_x = tasks[i].state.incumbent();
      out[i].best_f = tasks[i].state.incumbent_fitness();
    }
  }
  return out;
}

}  // namespace wrsn
