#ifndef WRSN_RADIO_HPP
#define WRSN_RADIO_HPP

#include <vector>

#include "wrsn/types.hpp"

namespace wrsn {

/// Energy to receive l bits.
double energy_rx(double bits, const RadioParams& params);

/// Energy to transmit l bits over distance d. Free-space amplifier (d^2)
/// below the threshold distance, multi-path amplifier (d^4) at or above it.
double energy_tx(double bits, double distance, const RadioParams& params);

struct ConsumptionModel {
  double packet_bits = 1.0;
  double packet_rate = 1.0;   // packets/second
  double comm_range = 0.0;    // 0 -> field_width / 5
  double p_lo = 0.8;          // clamp band, J/s
  double p_hi = 2.0;
  RadioParams radio;
};

/// Per-sensor average consumption rates from a hop-count shortest-path
/// routing tree toward the base station (distance breaks hop ties).
/// Each sensor pays one transmission to its parent plus one reception per
/// descendant, scaled by the packet rate, then clamped into [p_lo, p_hi].
/// Throws InvalidArgument naming the first sensor that cannot reach the base.
std::vector<double> derive_consumption_rates(const NetworkInstance& instance,
                                             const ConsumptionModel& model);

}  // namespace wrsn

#endif
