#ifndef WRSN_IO_HPP
#define WRSN_IO_HPP

#include <string>

#include "wrsn/evaluation.hpp"
#include "wrsn/types.hpp"

namespace wrsn {

inline constexpr int kSchemaVersion = 1;

std::string instance_to_json(const NetworkInstance& instance);
NetworkInstance instance_from_json(const std::string& text);

void save_instance(const NetworkInstance& instance, const std::string& path);
NetworkInstance load_instance(const std::string& path);

std::string schedule_to_json(const ChargingSchedule& schedule);
ChargingSchedule schedule_from_json(const std::string& text);
void save_schedule(const ChargingSchedule& schedule, const std::string& path);
ChargingSchedule load_schedule(const std::string& path);

std::string report_to_json(const EvaluationReport& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace wrsn

#endif
