#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "lwr/fw/control_fw.hpp"
#include "lwr/fw/daq_fw.hpp"
#include "lwr/hw/chassis.hpp"
#include "lwr/hw/quantity_script.hpp"

namespace lwr::robot {

struct RobotConfig {
  std::string listen = "127.0.0.1:8080";
  sim::Micros tick_us = sim::kDefaultTickUs;
  std::int64_t serial_latency_ticks = 0;
  fw::ControlConfig control;
  hw::Geometry geometry;
  hw::Pose initial_pose;
  double vref = 5.0;
  std::filesystem::path data_dir;  // empty: in-memory store
  std::filesystem::path cockpit_dir;
  std::size_t footprint_capacity = 10'000;
  std::size_t stream_backlog = 1000;
  std::uint64_t seed = 0;
  std::vector<fw::ChannelConfig> channels;
  hw::QuantityScript quantities;
};

// Compass on channel 0 every 10 s, then temperature (gain 4), gas (gain 1)
// and a second temperature probe (gain 2) every 60 s.
std::vector<fw::ChannelConfig> default_channels();

RobotConfig default_config();

// Every error names the offending key, e.g. "config key 'channels[1].gain':
// ...". Relative paths resolve against base_dir. Throws Error(kConfig).
RobotConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
RobotConfig load_config(const std::filesystem::path& path);

// LWR_LISTEN overrides the listen address when set.
void apply_env_overrides(RobotConfig& config);

}  // namespace lwr::robot
