#include "wrsn/cluster.hpp"

#include <algorithm>
#include <limits>

#include "wrsn/pathops.hpp"

namespace wrsn {

DistanceMatrix distance_matrix(const std::vector<ChargingPath>& population) {
  const std::size_t m = population.size();
  DistanceMatrix d(m);
  if (m == 0) return d;
  const std::size_t n = population.front().order.size();
  const double max_pairs = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double eps = static_cast<double>(path_similarity(population[i], population[j]));
      d.set(i, j, max_pairs > 0.0 ? 1.0 - eps / max_pairs : 0.0);
    }
  }
  return d;
}

namespace {

double assignment_cost(const DistanceMatrix& d, const std::vector<int>& medoids,
                       std::vector<int>* assignment) {
  double cost = 0.0;
  for (std::size_t p = 0; p < d.size(); ++p) {
    double best = std::numeric_limits<double>::infinity();
    int best_cluster = 0;
    for (std::size_t c = 0; c < medoids.size(); ++c) {
      const double dist = d.at(p, static_cast<std::size_t>(medoids[c]));
      if (dist < best) {
        best = dist;
        best_cluster = static_cast<int>(c);
      }
    }
    cost += best;
    if (assignment) (*assignment)[p] = best_cluster;
  }
  return cost;
}

}  // namespace

PamResult pam_cluster(const DistanceMatrix& d, int k) {
  const std::size_t n = d.size();
  if (k < 1 || static_cast<std::size_t>(k) > n)
    throw InvalidArgument("pam_cluster: k must lie in [1, population size]");

  std::vector<char> is_medoid(n, 0);
  std::vector<int> medoids;
  medoids.reserve(static_cast<std::size_t>(k));

  // BUILD: first the most central point, then greedily the point giving the
  // largest cost reduction.
  {
    std::size_t best = 0;
    double best_total = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      double total = 0.0;
      for (std::size_t j = 0; j < n; ++j) total += d.at(i, j);
      if (total < best_total) {
        best_total = total;
        best = i;
      }
    }
    medoids.push_back(static_cast<int>(best));
    is_medoid[best] = 1;
  }
  std::vector<double> nearest(n);  // distance to the closest chosen medoid
  for (std::size_t j = 0; j < n; ++j) nearest[j] = d.at(j, static_cast<std::size_t>(medoids[0]));

  while (static_cast<int>(medoids.size()) < k) {
    std::size_t best = n;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (is_medoid[i]) continue;
      double gain = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (is_medoid[j] || j == i) continue;
        gain += std::max(0.0, nearest[j] - d.at(i, j));
      }
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    medoids.push_back(static_cast<int>(best));
    is_medoid[best] = 1;
    for (std::size_t j = 0; j < n; ++j) nearest[j] = std::min(nearest[j], d.at(j, best));
  }

  // SWAP: apply the best strictly improving (medoid, point) exchange until none.
  double cost = assignment_cost(d, medoids, nullptr);
  while (true) {
    double best_cost = cost;
    std::size_t best_m = 0, best_p = 0;
    bool improved = false;
    for (std::size_t m = 0; m < medoids.size(); ++m) {
      for (std::size_t p = 0; p < n; ++p) {
        if (is_medoid[p]) continue;
        std::vector<int> trial = medoids;
        trial[m] = static_cast<int>(p);
        const double c = assignment_cost(d, trial, nullptr);
        if (c < best_cost) {
          best_cost = c;
          best_m = m;
          best_p = p;
          improved = true;
        }
      }
    }
    if (!improved) break;
    is_medoid[static_cast<std::size_t>(medoids[best_m])] = 0;
    is_medoid[best_p] = 1;
    medoids[best_m] = static_cast<int>(best_p);
    cost = best_cost;
  }

  PamResult result;
  result.medoids = medoids;
  result.assignment.resize(n);
  result.cost = assignment_cost(d, medoids, &result.assignment);
  return result;
}

std::vector<std::size_t> representatives(const std::vector<double>& fitness,
                                         const PamResult& clusters) {
  const std::size_t k = clusters.medoids.size();
  std::vector<std::size_t> best(k, fitness.size());
  for (std::size_t p = 0; p < fitness.size(); ++p) {
    const std::size_t c = static_cast<std::size_t>(clusters.assignment[p]);
    if (best[c] == fitness.size() || fitness[p] < fitness[best[c]]) best[c] = p;
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (best[c] == fitness.size())
      throw std::logic_error("representatives: empty cluster");
  }
  return best;
}

}  // namespace wrsn
