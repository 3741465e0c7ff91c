#include "wrsn/evo.hpp"

#include <algorithm>
#include <cmath>

namespace wrsn {

std::pair<ChargingPath, ChargingPath> pmx_crossover_at(const ChargingPath& parent1,
                                                       const ChargingPath& parent2,
                                                       std::size_t cut_lo, std::size_t cut_hi) {
  const std::size_t n = parent1.order.size();
  if (parent2.order.size() != n) throw InvalidArgument("pmx: parents differ in length");
  if (cut_lo > cut_hi || cut_hi > n) throw InvalidArgument("pmx: bad cut points");

  int max_id = 0;
  for (int id : parent1.order) max_id = std::max(max_id, id);

  const auto make_child = [&](const std::vector<int>& seg_src, const std::vector<int>& other) {
    std::vector<int> child(n, 0);
    std::vector<std::size_t> pos_other(static_cast<std::size_t>(max_id) + 1, 0);
    std::vector<char> in_segment(static_cast<std::size_t>(max_id) + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const int id = other[i];
      if (id < 1 || id > max_id) throw InvalidArgument("pmx: parents must share one id set");
      pos_other[static_cast<std::size_t>(id)] = i;
    }

    for (std::size_t i = cut_lo; i < cut_hi; ++i) {
      child[i] = seg_src[i];
      in_segment[static_cast<std::size_t>(seg_src[i])] = 1;
    }
    // Elements displaced from the other parent's segment follow the mapping
    // chain until they land outside the copied window.
    for (std::size_t i = cut_lo; i < cut_hi; ++i) {
      const int value = other[i];
      if (in_segment[static_cast<std::size_t>(value)]) continue;
      std::size_t slot = i;
      do {
        slot = pos_other[static_cast<std::size_t>(seg_src[slot])];
      } while (slot >= cut_lo && slot < cut_hi);
      child[slot] = value;
      in_segment[static_cast<std::size_t>(value)] = 1;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (child[i] == 0) child[i] = other[i];
    }
    return child;
  };

  ChargingPath c1, c2;
  c1.order = make_child(parent1.order, parent2.order);
  c2.order = make_child(parent2.order, parent1.order);
  return {std::move(c1), std::move(c2)};
}

std::pair<ChargingPath, ChargingPath> pmx_crossover(const ChargingPath& parent1,
                                                    const ChargingPath& parent2, Rng& rng) {
  const std::size_t n = parent1.order.size();
  if (n < 2) return {parent1, parent2};
  std::size_t a = rng.index(n + 1);
  std::size_t b = rng.index(n + 1);
  if (a > b) std::swap(a, b);
  return pmx_crossover_at(parent1, parent2, a, b);
}

ChargingPath swap_mutation(const ChargingPath& path, double rate, Rng& rng) {
  if (rate < 0.0 || rate > 1.0) throw InvalidArgument("swap_mutation: rate outside [0,1]");
  ChargingPath out = path;
  const std::size_t n = out.order.size();
  if (n < 2) return out;
  if (rng.uniform01() < rate) {
    const std::size_t i = rng.index(n);
    std::size_t j = rng.index(n - 1);
    if (j >= i) ++j;
    std::swap(out.order[i], out.order[j]);
  }
  return out;
}

std::pair<TimeChromosome, TimeChromosome> sbx_crossover(const TimeChromosome& x,
                                                        const TimeChromosome& y, double eta,
                                                        double rate, Rng& rng) {
  if (x.size() != y.size()) throw InvalidArgument("sbx: chromosomes differ in length");
  if (eta <= 0.0) throw InvalidArgument("sbx: eta must be positive");
  TimeChromosome c1 = x, c2 = y;
  if (!(rng.uniform01() < rate)) return {std::move(c1), std::move(c2)};

  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(rng.uniform01() < 0.5)) continue;  // per-gene exchange probability
    const double u = rng.uniform01();
    const double beta = u <= 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0))
                                 : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
    const double a = x[i], b = y[i];
    c1[i] = std::clamp(0.5 * ((1.0 + beta) * a + (1.0 - beta) * b), 0.0, 1.0);
    c2[i] = std::clamp(0.5 * ((1.0 - beta) * a + (1.0 + beta) * b), 0.0, 1.0);
  }
  return {std::move(c1), std::move(c2)};
}

TimeChromosome poly_mutation(const TimeChromosome& x, double eta, double rate, Rng& rng) {
  if (eta <= 0.0) throw InvalidArgument("poly_mutation: eta must be positive");
  if (rate < 0.0 || rate > 1.0) throw InvalidArgument("poly_mutation: rate outside [0,1]");
  TimeChromosome out = x;
  for (double& gene : out) {
    if (!(rng.uniform01() < rate)) continue;
    const double u = rng.uniform01();
    const double delta = u < 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0)) - 1.0
                                 : 1.0 - std::pow(2.0 * (1.0 - u), 1.0 / (eta + 1.0));
    gene = std::clamp(gene + delta, 0.0, 1.0);
  }
  return out;
}

std::size_t tournament_select(const std::vector<double>& fitness, int arity, Rng& rng) {
  if (fitness.empty()) throw InvalidArgument("tournament_select: empty population");
  if (arity < 1) throw InvalidArgument("tournament_select: arity must be >= 1");
  std::size_t best = rng.index(fitness.size());
  for (int t = 1; t < arity; ++t) {
    const std::size_t c = rng.index(fitness.size());
    if (fitness[c] < fitness[best] || (fitness[c] == fitness[best] && c < best)) best = c;
  }
  return best;
}

ChargingSchedule decode_times(const TimeChromosome& ratios, const ChargingPath& path,
                              const NetworkInstance& instance) {
  PathContext ctx(path, instance);
  return ChargingSchedule{path, ctx.decode_times(ratios)};
}

}  // namespace wrsn
