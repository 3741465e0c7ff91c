#include "wrsn/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "wrsn/rng.hpp"

namespace wrsn {

Distribution distribution_from_string(const std::string& s) {
  if (s == "uniform" || s == "r") return Distribution::kUniform;
  if (s == "normal" || s == "n") return Distribution::kNormal;
  if (s == "grid" || s == "g") return Distribution::kGrid;
  throw InvalidArgument("unknown distribution '" + s + "' (expected uniform|normal|grid)");
}

std::string to_string(Distribution d) {
  switch (d) {
    case Distribution::kUniform: return "uniform";
    case Distribution::kNormal: return "normal";
    case Distribution::kGrid: return "grid";
  }
  return "uniform";
}

char distribution_code(Distribution d) {
  switch (d) {
    case Distribution::kUniform: return 'r';
    case Distribution::kNormal: return 'n';
    case Distribution::kGrid: return 'g';
  }
  return 'r';
}

std::string default_instance_name(Distribution d, int n, std::uint64_t seed) {
  return std::string(1, distribution_code(d)) + "_" + std::to_string(n) + "_" +
         std::to_string(seed);
}

void InstanceSpec::validate() const {
  if (n < 1) throw InvalidArgument("instance spec: n must be >= 1");
  if (field_width <= 0.0) throw InvalidArgument("instance spec: field width must be positive");
  if (!(e_min >= 0.0 && e_min < e_max))
    throw InvalidArgument("instance spec: requires 0 <= e_min < e_max");
  if (!(e_init_lo_frac > 0.0 && e_init_lo_frac <= e_init_hi_frac && e_init_hi_frac <= 1.0))
    throw InvalidArgument("instance spec: e_init fractions must satisfy 0 < lo <= hi <= 1");
  if (!(p_lo > 0.0 && p_lo <= p_hi)) throw InvalidArgument("instance spec: bad p band");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("instance spec: alpha outside [0,1]");
  if (fixed_period && *fixed_period <= 0.0)
    throw InvalidArgument("instance spec: period T must be positive");
  if (normal_sigma_frac <= 0.0) throw InvalidArgument("instance spec: sigma fraction must be positive");
  if (charger.battery_capacity <= 0.0 || charger.charge_rate <= 0.0 ||
      charger.travel_power <= 0.0 || charger.speed <= 0.0)
    throw InvalidArgument("instance spec: charger parameters must be positive");
}

namespace {

void place_sensors(const InstanceSpec& spec, Rng& rng, std::vector<SensorNode>& sensors) {
  const double w = spec.field_width;
  switch (spec.distribution) {
    case Distribution::kUniform:
      for (auto& s : sensors) {
        s.x = rng.uniform(0.0, w);
        s.y = rng.uniform(0.0, w);
      }
      break;
    case Distribution::kNormal: {
      const double sigma = w * spec.normal_sigma_frac;
      for (auto& s : sensors) {
        // Out-of-field samples are discarded and redrawn.
        double x, y;
        do {
          x = rng.normal(w / 2.0, sigma);
          y = rng.normal(w / 2.0, sigma);
        } while (x < 0.0 || x > w || y < 0.0 || y > w);
        s.x = x;
        s.y = y;
      }
      break;
    }
    case Distribution::kGrid: {
      // 10x10 cells of side w/10, filled row-major and wrapping when n > 100.
      const int cells_per_side = 10;
      const double cell = w / cells_per_side;
      for (std::size_t i = 0; i < sensors.size(); ++i) {
        const int c = static_cast<int>(i % (cells_per_side * cells_per_side));
        const int row = c / cells_per_side;
        const int col = c % cells_per_side;
        sensors[i].x = col * cell + rng.uniform(0.0, cell);
        sensors[i].y = row * cell + rng.uniform(0.0, cell);
      }
      break;
    }
  }
}

/// Nearest-neighbor tour time from the base through all sensors and back.
double nearest_neighbor_tour_time(const NetworkInstance& inst) {
  const int n = inst.size();
  std::vector<char> visited(static_cast<std::size_t>(n) + 1, 0);
  int current = 0;
  double length = 0.0;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int id = 1; id <= n; ++id) {
      if (visited[id]) continue;
      const double d = inst.distance(current, id);
      if (d < best_d) {
        best_d = d;
        best = id;
      }
    }
    visited[best] = 1;
    length += best_d;
    current = best;
  }
  length += inst.distance(current, 0);
  return length / inst.charger.speed;
}

}  // namespace

NetworkInstance generate_instance(const InstanceSpec& spec) {
  spec.validate();
  Rng rng(derive_seed(spec.seed, 0xa3c59ac2u));

  NetworkInstance inst;
  inst.name = spec.name.empty()
                  ? default_instance_name(spec.distribution, spec.n, spec.seed)
                  : spec.name;
  inst.field_width = spec.field_width;
  inst.base_x = spec.field_width / 2.0;
  inst.base_y = spec.field_width / 2.0;
  inst.alpha = spec.alpha;
  inst.charger = spec.charger;

  inst.sensors.resize(static_cast<std::size_t>(spec.n));
  for (int i = 0; i < spec.n; ++i) {
    SensorNode& s = inst.sensors[static_cast<std::size_t>(i)];
    s.id = i + 1;
    s.e_max = spec.e_max;
    s.e_min = spec.e_min;
  }
  place_sensors(spec, rng, inst.sensors);

  for (auto& s : inst.sensors) {
    s.e_init = rng.uniform(spec.e_init_lo_frac, spec.e_init_hi_frac) * spec.e_max;
    s.e_init = std::max(s.e_init, s.e_min);
  }

  if (spec.derived_rates) {
    const std::vector<double> rates = derive_consumption_rates(inst, *spec.derived_rates);
    for (int i = 0; i < spec.n; ++i) inst.sensors[static_cast<std::size_t>(i)].p = rates[static_cast<std::size_t>(i)];
  } else {
    for (auto& s : inst.sensors) s.p = rng.uniform(spec.p_lo, spec.p_hi);
  }

  inst.cycle_period = spec.fixed_period
                          ? *spec.fixed_period
                          : nearest_neighbor_tour_time(inst) +
                                spec.charger.battery_capacity / spec.charger.charge_rate;
  inst.validate();
  return inst;
}

}  // namespace wrsn
