#include "wrsn/radio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

namespace wrsn {

double energy_rx(double bits, const RadioParams& params) {
  if (bits < 0.0) throw InvalidArgument("energy_rx: negative bit count");
  return bits * params.elec_per_bit;
}

double energy_tx(double bits, double distance, const RadioParams& params) {
  if (bits < 0.0) throw InvalidArgument("energy_tx: negative bit count");
  if (distance < 0.0) throw InvalidArgument("energy_tx: negative distance");
  const double amp = distance < params.threshold_distance()
                         ? params.fs_amp * distance * distance
                         : params.mp_amp * distance * distance * distance * distance;
  return bits * (params.elec_per_bit + amp);
}

std::vector<double> derive_consumption_rates(const NetworkInstance& instance,
                                             const ConsumptionModel& model) {
  const int n = instance.size();
  const double range = model.comm_range > 0.0 ? model.comm_range : instance.field_width / 5.0;

  // BFS levels over the communication graph; node 0 is the base.
  constexpr int kUnreached = -1;
  std::vector<int> hop(static_cast<std::size_t>(n) + 1, kUnreached);
  hop[0] = 0;
  std::queue<int> frontier;
  frontier.push(0);
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v = 1; v <= n; ++v) {
      if (hop[v] == kUnreached && instance.distance(u, v) <= range) {
        hop[v] = hop[u] + 1;
        frontier.push(v);
      }
    }
  }
  for (int v = 1; v <= n; ++v) {
    if (hop[v] == kUnreached) {
      throw InvalidArgument("instance generation: sensor " + std::to_string(v) +
                            " cannot reach the base station within the communication range");
    }
  }

  // Parent = nearest neighbor one hop closer to the base (lowest id on ties).
  std::vector<int> parent(static_cast<std::size_t>(n) + 1, 0);
  for (int v = 1; v <= n; ++v) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int u = 0; u <= n; ++u) {
      if (u == v || hop[u] != hop[v] - 1) continue;
      const double d = instance.distance(u, v);
      if (d <= range && d < best_d) {
        best_d = d;
        best = u;
      }
    }
    parent[v] = best;  // BFS reachability guarantees best >= 0
  }

  std::vector<int> descendants(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) order[v - 1] = v;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return hop[a] > hop[b]; });
  for (int v : order) {
    if (parent[v] != 0) descendants[parent[v]] += descendants[v] + 1;
  }

  std::vector<double> rates(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) {
    const double d = instance.distance(v, parent[v]);
    const double per_packet = energy_tx(model.packet_bits, d, model.radio) +
                              energy_rx(model.packet_bits, model.radio) * descendants[v];
    rates[v - 1] = std::clamp(model.packet_rate * per_packet, model.p_lo, model.p_hi);
  }
  return rates;
}

}  // namespace wrsn
