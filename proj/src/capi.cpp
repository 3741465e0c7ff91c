#include "wrsn.h"

#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "wrsn/evaluation.hpp"
#include "wrsn/instance_gen.hpp"
#include "wrsn/io.hpp"
#include "wrsn/solvers.hpp"
#include "wrsn/types.hpp"

using nlohmann::json;

struct wrsn_instance {
  wrsn::NetworkInstance value;
};

struct wrsn_result {
  wrsn::SolveResult value;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
wrsn_status guarded(Fn&& fn) {
  try {
    fn();
    return WRSN_OK;
  } catch (const wrsn::ParseError& e) {
    g_last_error = e.what();
    return WRSN_ERR_IO;
  } catch (const wrsn::InvalidArgument& e) {
    g_last_error = e.what();
    return WRSN_ERR_INVALID_ARGUMENT;
  } catch (const json::exception& e) {
    g_last_error = e.what();
    return WRSN_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return WRSN_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WRSN_ERR_INTERNAL;
  }
}

wrsn_status fail_invalid(const char* message) {
  g_last_error = message;
  return WRSN_ERR_INVALID_ARGUMENT;
}

wrsn::InstanceSpec parse_spec(const char* spec_json) {
  json j;
  try {
    j = json::parse(spec_json);
  } catch (const json::parse_error& e) {
    throw wrsn::InvalidArgument(std::string("instance spec: ") + e.what());
  }
  wrsn::InstanceSpec spec;
  if (j.contains("distribution"))
    spec.distribution = wrsn::distribution_from_string(j["distribution"].get<std::string>());
  if (j.contains("n")) spec.n = j["n"].get<int>();
  if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("field_width")) spec.field_width = j["field_width"].get<double>();
  if (j.contains("alpha")) spec.alpha = j["alpha"].get<double>();
  if (j.contains("e_max")) spec.e_max = j["e_max"].get<double>();
  if (j.contains("e_min")) spec.e_min = j["e_min"].get<double>();
  if (j.contains("T")) spec.fixed_period = j["T"].get<double>();
  if (j.contains("sigma_frac")) spec.normal_sigma_frac = j["sigma_frac"].get<double>();
  if (j.contains("name")) spec.name = j["name"].get<std::string>();
  if (j.contains("e_init_frac")) {
    const auto band = j["e_init_frac"].get<std::vector<double>>();
    if (band.size() != 2) throw wrsn::InvalidArgument("instance spec: e_init_frac needs [lo,hi]");
    spec.e_init_lo_frac = band[0];
    spec.e_init_hi_frac = band[1];
  }
  if (j.contains("p_band")) {
    const auto band = j["p_band"].get<std::vector<double>>();
    if (band.size() != 2) throw wrsn::InvalidArgument("instance spec: p_band needs [lo,hi]");
    spec.p_lo = band[0];
    spec.p_hi = band[1];
  }
  if (j.contains("charger")) {
    const json& c = j["charger"];
    if (c.contains("E_MC")) spec.charger.battery_capacity = c["E_MC"].get<double>();
    if (c.contains("U")) spec.charger.charge_rate = c["U"].get<double>();
    if (c.contains("P_M")) spec.charger.travel_power = c["P_M"].get<double>();
    if (c.contains("v")) spec.charger.speed = c["v"].get<double>();
  }
  if (j.contains("derived_rates")) {
    const json& d = j["derived_rates"];
    wrsn::ConsumptionModel m;
    if (d.contains("packet_bits")) m.packet_bits = d["packet_bits"].get<double>();
    if (d.contains("packet_rate")) m.packet_rate = d["packet_rate"].get<double>();
    if (d.contains("comm_range")) m.comm_range = d["comm_range"].get<double>();
    if (d.contains("p_lo")) m.p_lo = d["p_lo"].get<double>();
    if (d.contains("p_hi")) m.p_hi = d["p_hi"].get<double>();
    spec.derived_rates = m;
  }
  return spec;
}

struct ParsedConfig {
  std::string algorithm;
  wrsn::SolverConfig config;
  std::uint64_t seed = 1;
};

ParsedConfig parse_config(const char* config_json) {
  json j;
  try {
    j = json::parse(config_json);
  } catch (const json::parse_error& e) {
    throw wrsn::InvalidArgument(std::string("solver config: ") + e.what());
  }
  ParsedConfig out;
  if (!j.contains("algo")) throw wrsn::InvalidArgument("solver config: missing 'algo'");
  out.algorithm = j["algo"].get<std::string>();
  if (j.contains("seed")) out.seed = j["seed"].get<std::uint64_t>();
  wrsn::SolverConfig& c = out.config;
  if (j.contains("alpha")) c.alpha = j["alpha"].get<double>();
  if (j.contains("path_evals")) c.path_eval_budget = j["path_evals"].get<long>();
  if (j.contains("time_evals")) c.time_eval_budget = j["time_evals"].get<long>();
  if (j.contains("pop_path")) c.path_population = j["pop_path"].get<int>();
  if (j.contains("pop_time")) c.time_population = j["pop_time"].get<int>();
  if (j.contains("crossover_rate")) c.crossover_rate = j["crossover_rate"].get<double>();
  if (j.contains("mutation_rate")) c.mutation_rate = j["mutation_rate"].get<double>();
  if (j.contains("sbx_eta")) c.sbx_eta = j["sbx_eta"].get<double>();
  if (j.contains("pm_eta")) c.pm_eta = j["pm_eta"].get<double>();
  if (j.contains("patience")) c.patience = j["patience"].get<int>();
  if (j.contains("greedy_init")) c.greedy_init = j["greedy_init"].get<bool>();
  if (j.contains("cma_transfer")) c.cma_transfer = j["cma_transfer"].get<bool>();
  if (j.contains("threads")) c.threads = j["threads"].get<int>();
  return out;
}

}  // namespace

extern "C" {

const char* wrsn_version(void) { return "1.0.0"; }

const char* wrsn_last_error(void) { return g_last_error.c_str(); }

void wrsn_string_free(char* s) { delete[] s; }

wrsn_status wrsn_instance_generate(const char* spec_json, wrsn_instance** out) {
  if (!spec_json || !out) return fail_invalid("null argument");
  return guarded([&] {
    auto* handle = new wrsn_instance{wrsn::generate_instance(parse_spec(spec_json))};
    *out = handle;
  });
}

wrsn_status wrsn_instance_from_json(const char* instance_json, wrsn_instance** out) {
  if (!instance_json || !out) return fail_invalid("null argument");
  return guarded([&] { *out = new wrsn_instance{wrsn::instance_from_json(instance_json)}; });
}

wrsn_status wrsn_instance_load(const char* path, wrsn_instance** out) {
  if (!path || !out) return fail_invalid("null argument");
  return guarded([&] { *out = new wrsn_instance{wrsn::load_instance(path)}; });
}

wrsn_status wrsn_instance_save(const wrsn_instance* instance, const char* path) {
  if (!instance || !path) return fail_invalid("null argument");
  return guarded([&] { wrsn::save_instance(instance->value, path); });
}

wrsn_status wrsn_instance_to_json(const wrsn_instance* instance, char** out_json) {
  if (!instance || !out_json) return fail_invalid("null argument");
  return guarded([&] { *out_json = dup_string(wrsn::instance_to_json(instance->value)); });
}

wrsn_status wrsn_instance_clone(const wrsn_instance* instance, wrsn_instance** out) {
  if (!instance || !out) return fail_invalid("null argument");
  return guarded([&] { *out = new wrsn_instance{instance->value}; });
}

wrsn_status wrsn_instance_override(wrsn_instance* instance, const char* key, double value) {
  if (!instance || !key) return fail_invalid("null argument");
  return guarded([&] {
    wrsn::NetworkInstance& inst = instance->value;
    const std::string k = key;
    if (k == "U") {
      inst.charger.charge_rate = value;
    } else if (k == "E_MC") {
      inst.charger.battery_capacity = value;
    } else if (k == "P_M") {
      inst.charger.travel_power = value;
    } else if (k == "v") {
      inst.charger.speed = value;
    } else if (k == "alpha") {
      inst.alpha = value;
    } else if (k == "T") {
      inst.cycle_period = value;
    } else if (k == "p_mean") {
      if (value <= 0.0) throw wrsn::InvalidArgument("override p_mean: must be positive");
      const double current = inst.total_consumption_rate() / inst.size();
      const double scale = value / current;
      for (auto& s : inst.sensors) s.p *= scale;
    } else {
      throw wrsn::InvalidArgument("unknown override key '" + k +
                                  "' (expected U|E_MC|P_M|v|alpha|T|p_mean)");
    }
    inst.validate();
  });
}

int wrsn_instance_sensor_count(const wrsn_instance* instance) {
  return instance ? instance->value.size() : 0;
}

const char* wrsn_instance_name(const wrsn_instance* instance) {
  return instance ? instance->value.name.c_str() : "";
}

void wrsn_instance_free(wrsn_instance* instance) { delete instance; }

wrsn_status wrsn_solve(const wrsn_instance* instance, const char* config_json,
                       wrsn_result** out) {
  if (!instance || !config_json || !out) return fail_invalid("null argument");
  return guarded([&] {
    const ParsedConfig parsed = parse_config(config_json);
    *out = new wrsn_result{
        wrsn::solve(parsed.algorithm, instance->value, parsed.config, parsed.seed)};
  });
}

double wrsn_result_objective(const wrsn_result* result) {
  return result ? result->value.best_report.objective : 0.0;
}

double wrsn_result_dead_ratio(const wrsn_result* result) {
  return result ? result->value.best_report.dead_ratio : 0.0;
}

long wrsn_result_path_evaluations(const wrsn_result* result) {
  return result ? result->value.path_evaluations : 0;
}

long wrsn_result_time_evaluations(const wrsn_result* result) {
  return result ? result->value.time_evaluations : 0;
}

double wrsn_result_runtime_seconds(const wrsn_result* result) {
  return result ? result->value.runtime_seconds : 0.0;
}

wrsn_status wrsn_result_csv_row(const wrsn_result* result, const char* instance_label,
                                char** out_row) {
  if (!result || !instance_label || !out_row) return fail_invalid("null argument");
  return guarded(
      [&] { *out_row = dup_string(wrsn::results_csv_row(result->value, instance_label)); });
}

wrsn_status wrsn_result_trace_csv(const wrsn_result* result, char** out_csv) {
  if (!result || !out_csv) return fail_invalid("null argument");
  return guarded([&] { *out_csv = dup_string(wrsn::trace_csv(result->value)); });
}

wrsn_status wrsn_result_schedule_json(const wrsn_result* result, char** out_json) {
  if (!result || !out_json) return fail_invalid("null argument");
  return guarded(
      [&] { *out_json = dup_string(wrsn::schedule_to_json(result->value.best_schedule)); });
}

wrsn_status wrsn_result_report_json(const wrsn_result* result, char** out_json) {
  if (!result || !out_json) return fail_invalid("null argument");
  return guarded([&] { *out_json = dup_string(wrsn::report_to_json(result->value.best_report)); });
}

void wrsn_result_free(wrsn_result* result) { delete result; }

wrsn_status wrsn_evaluate(const wrsn_instance* instance, const char* schedule_json,
                          char** out_report_json) {
  if (!instance || !schedule_json || !out_report_json) return fail_invalid("null argument");
  return guarded([&] {
    const wrsn::ChargingSchedule schedule = wrsn::schedule_from_json(schedule_json);
    const wrsn::EvaluationReport report = wrsn::evaluate_schedule(schedule, instance->value);
    *out_report_json = dup_string(wrsn::report_to_json(report));
  });
}

const char* wrsn_results_csv_header(void) {
  static const std::string header = wrsn::results_csv_header();
  return header.c_str();
}

}  // extern "C"
