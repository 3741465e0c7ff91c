#ifndef WRSN_EVO_HPP
#define WRSN_EVO_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "wrsn/evaluation.hpp"
#include "wrsn/rng.hpp"

namespace wrsn {

/// Per-sensor charging-time ratios in [0,1]; decoded against a path's budget.
using TimeChromosome = std::vector<double>;

/// Partially mapped crossover with the segment [cut_lo, cut_hi) fixed.
/// Exposed so tests can pin golden traces; the randomized form draws the cuts.
std::pair<ChargingPath, ChargingPath> pmx_crossover_at(const ChargingPath& parent1,
                                                       const ChargingPath& parent2,
                                                       std::size_t cut_lo, std::size_t cut_hi);

std::pair<ChargingPath, ChargingPath> pmx_crossover(const ChargingPath& parent1,
                                                    const ChargingPath& parent2, Rng& rng);

/// With probability `rate`, swaps two distinct uniformly chosen positions.
ChargingPath swap_mutation(const ChargingPath& path, double rate, Rng& rng);

/// Simulated binary crossover, applied per pair with probability `rate`.
/// Gene-wise recombination keeps the parents' mean; offspring are clamped
/// into [0,1] afterwards.
std::pair<TimeChromosome, TimeChromosome> sbx_crossover(const TimeChromosome& x,
                                                        const TimeChromosome& y, double eta,
                                                        double rate, Rng& rng);

/// Polynomial mutation applied per gene with probability `rate`; stays in [0,1].
TimeChromosome poly_mutation(const TimeChromosome& x, double eta, double rate, Rng& rng);

/// Index of the lowest-fitness individual among `arity` uniform draws
/// (with replacement). Ties go to the earlier population index.
std::size_t tournament_select(const std::vector<double>& fitness, int arity, Rng& rng);

/// Dwell times from ratios: tau_i = budget * rho_i / sum(rho), equal split
/// when the ratios sum to zero, then capacity-capped like the greedy split.
ChargingSchedule decode_times(const TimeChromosome& ratios, const ChargingPath& path,
                              const NetworkInstance& instance);

}  // namespace wrsn

#endif
