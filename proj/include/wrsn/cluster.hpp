#ifndef WRSN_CLUSTER_HPP
#define WRSN_CLUSTER_HPP

#include <cstddef>
#include <vector>

#include "wrsn/evaluation.hpp"

namespace wrsn {

/// Symmetric dissimilarities in [0,1] with a zero diagonal.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double at(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    d_[i * n_ + j] = v;
    d_[j * n_ + i] = v;
  }

 private:
  std::size_t n_;
  std::vector<double> d_;
};

/// Pairwise path dissimilarity: 1 - concordant_pairs / (n(n-1)/2).
DistanceMatrix distance_matrix(const std::vector<ChargingPath>& population);

struct PamResult {
  std::vector<int> medoids;     // point indices, one per cluster
  std::vector<int> assignment;  // cluster index per point
  double cost = 0.0;            // sum of distances to assigned medoids
};

/// Classic PAM: greedy BUILD seeding followed by best-improvement SWAP until
/// no (medoid, point) exchange lowers the cost. Fully deterministic; ties
/// break toward the lower point index.
PamResult pam_cluster(const DistanceMatrix& d, int k);

/// Per cluster, the population index with the lowest fitness (earlier index
/// wins ties). Cluster order follows the medoid order of `clusters`.
std::vector<std::size_t> representatives(const std::vector<double>& fitness,
                                         const PamResult& clusters);

}  // namespace wrsn

#endif
