#ifndef WRSN_INSTANCE_GEN_HPP
#define WRSN_INSTANCE_GEN_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "wrsn/radio.hpp"
#include "wrsn/types.hpp"

namespace wrsn {

enum class Distribution { kUniform, kNormal, kGrid };

Distribution distribution_from_string(const std::string& s);
std::string to_string(Distribution d);

/// Short code used in instance names: r (random/uniform), n (normal), g (grid).
char distribution_code(Distribution d);

struct InstanceSpec {
  Distribution distribution = Distribution::kUniform;
  int n = 50;
  double field_width = 500.0;
  std::uint64_t seed = 1;

  ChargerConfig charger;
  double e_max = 10800.0;
  double e_min = 540.0;
  double alpha = 0.5;

  // e_init policy: uniform fraction of e_max.
  double e_init_lo_frac = 0.3;
  double e_init_hi_frac = 1.0;

  // p policy: uniform band, or derived from the routing tree when set.
  double p_lo = 0.8;
  double p_hi = 2.0;
  std::optional<ConsumptionModel> derived_rates;

  // T policy: explicit period wins; otherwise the default policy is the
  // nearest-neighbor tour time plus the charger's full charging span E_MC/U,
  // which makes the whole charging budget spendable on a good tour.
  std::optional<double> fixed_period;

  // Normal distribution spread as a fraction of the field width.
  double normal_sigma_frac = 1.0 / 6.0;

  std::string name;  // empty -> "<code>_<n>_<seed>"

  void validate() const;
};

/// Deterministic instance construction: the spec (seed included) fully
/// determines the result.
NetworkInstance generate_instance(const InstanceSpec& spec);

/// Default instance file name, "Type_Num_Ord" style (e.g. g_50_3).
std::string default_instance_name(Distribution d, int n, std::uint64_t seed);

}  // namespace wrsn

#endif
