#include "wrsn/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wrsn {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* name, const char* where) {
  auto it = j.find(name);
  if (it == j.end())
    throw ParseError(std::string(where) + ": missing field '" + name + "'");
  return *it;
}

double number(const json& j, const char* name, const char* where) {
  const json& v = field(j, name, where);
  if (!v.is_number())
    throw ParseError(std::string(where) + ": field '" + name + "' must be a number");
  return v.get<double>();
}

json parse(const std::string& text, const char* where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(where) + ": " + e.what());
  }
}

}  // namespace

std::string instance_to_json(const NetworkInstance& inst) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = inst.name;
  j["field_width"] = inst.field_width;
  j["base"] = {{"x", inst.base_x}, {"y", inst.base_y}};
  j["T"] = inst.cycle_period;
  j["alpha"] = inst.alpha;
  j["charger"] = {{"E_MC", inst.charger.battery_capacity},
                  {"U", inst.charger.charge_rate},
                  {"P_M", inst.charger.travel_power},
                  {"v", inst.charger.speed}};
  json sensors = json::array();
  for (const auto& s : inst.sensors) {
    sensors.push_back({{"id", s.id},
                       {"x", s.x},
                       {"y", s.y},
                       {"e_init", s.e_init},
                       {"p", s.p},
                       {"e_max", s.e_max},
                       {"e_min", s.e_min}});
  }
  j["sensors"] = std::move(sensors);
  return j.dump(2) + "\n";
}

NetworkInstance instance_from_json(const std::string& text) {
  const char* where = "instance file";
  const json j = parse(text, where);
  if (!j.is_object()) throw ParseError(std::string(where) + ": top level must be an object");

  const int version = field(j, "schema_version", where).get<int>();
  if (version != kSchemaVersion)
    throw ParseError(std::string(where) + ": unsupported schema_version " + std::to_string(version));

  NetworkInstance inst;
  inst.name = field(j, "name", where).get<std::string>();
  inst.field_width = number(j, "field_width", where);
  const json& base = field(j, "base", where);
  inst.base_x = number(base, "x", where);
  inst.base_y = number(base, "y", where);
  inst.cycle_period = number(j, "T", where);
  inst.alpha = number(j, "alpha", where);

  const json& charger = field(j, "charger", where);
  inst.charger.battery_capacity = number(charger, "E_MC", where);
  inst.charger.charge_rate = number(charger, "U", where);
  inst.charger.travel_power = number(charger, "P_M", where);
  inst.charger.speed = number(charger, "v", where);

  const json& sensors = field(j, "sensors", where);
  if (!sensors.is_array()) throw ParseError(std::string(where) + ": 'sensors' must be an array");
  for (const auto& sj : sensors) {
    SensorNode s;
    s.id = static_cast<int>(number(sj, "id", where));
    s.x = number(sj, "x", where);
    s.y = number(sj, "y", where);
    s.e_init = number(sj, "e_init", where);
    s.p = number(sj, "p", where);
    s.e_max = number(sj, "e_max", where);
    s.e_min = number(sj, "e_min", where);
    inst.sensors.push_back(s);
  }

  try {
    inst.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string(where) + ": " + e.what());
  }
  return inst;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw ParseError("failed writing '" + path + "'");
}

void save_instance(const NetworkInstance& instance, const std::string& path) {
  write_text_file(path, instance_to_json(instance));
}

NetworkInstance load_instance(const std::string& path) {
  return instance_from_json(read_text_file(path));
}

std::string schedule_to_json(const ChargingSchedule& schedule) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["order"] = schedule.path.order;
  j["times"] = schedule.times;
  return j.dump(2) + "\n";
}

ChargingSchedule schedule_from_json(const std::string& text) {
  const char* where = "schedule file";
  const json j = parse(text, where);
  ChargingSchedule s;
  s.path.order = field(j, "order", where).get<std::vector<int>>();
  s.times = field(j, "times", where).get<std::vector<double>>();
  if (s.path.order.size() != s.times.size())
    throw ParseError(std::string(where) + ": 'order' and 'times' lengths differ");
  return s;
}

void save_schedule(const ChargingSchedule& schedule, const std::string& path) {
  write_text_file(path, schedule_to_json(schedule));
}

ChargingSchedule load_schedule(const std::string& path) {
  return schedule_from_json(read_text_file(path));
}

std::string report_to_json(const EvaluationReport& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["order"] = r.schedule.path.order;
  j["times"] = r.schedule.times;
  j["arrival"] = r.arrival;
  j["energy_at_arrival"] = r.energy_at_arrival;
  j["energy_at_depot"] = r.energy_at_depot;
  j["dead"] = r.dead;
  j["energy_drop"] = r.energy_drop;
  j["objective"] = r.objective;
  j["dead_ratio"] = r.dead_ratio;
  j["travel_time"] = r.travel_time;
  j["charge_time"] = r.charge_time;
  j["move_energy"] = r.move_energy;
  j["charge_energy"] = r.charge_energy;
  j["feasible"] = r.feasible;
  json viols = json::array();
  for (const auto& v : r.violations) {
    viols.push_back({{"constraint", static_cast<int>(v.constraint)},
                     {"sensor_id", v.sensor_id},
                     {"slack", v.slack}});
  }
  j["violations"] = std::move(viols);
  return j.dump(2) + "\n";
}

}  // namespace wrsn
