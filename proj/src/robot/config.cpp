#include "lwr/robot/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include "json.hpp"

#include "lwr/error.hpp"

namespace lwr::robot {

using nlohmann::json;

std::vector<fw::ChannelConfig> default_channels() {
  std::vector<fw::ChannelConfig> out;
  fw::ChannelConfig compass;
  compass.id = 0;
  compass.kind = fw::ChannelKind::kCompass;
  compass.gain = 1;
  compass.interval_s = 10.0;
  out.push_back(compass);

  fw::ChannelConfig temp;
  temp.id = 1;
  temp.gain = 4;
  temp.sensor.transfer.kind = hw::SensorKind::kTemperature;
  temp.default_quantity = 25.0;
  out.push_back(temp);

  fw::ChannelConfig gas;
  gas.id = 2;
  gas.gain = 1;
  gas.sensor.transfer.kind = hw::SensorKind::kGas;
  gas.default_quantity = 50.0;
  out.push_back(gas);

  fw::ChannelConfig temp2 = temp;
  temp2.id = 3;
  temp2.gain = 2;
  temp2.default_quantity = 40.0;
  out.push_back(temp2);
  return out;
}

RobotConfig default_config() {
  RobotConfig c;
  c.channels = default_channels();
  return c;
}

namespace {

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
  throw Error(ErrorCode::kConfig, "config key '" + key + "': " + why);
}

void check_keys(const json& obj, const std::string& prefix, const std::set<std::string>& allowed) {
  if (!obj.is_object()) bad_key(prefix.empty() ? "<root>" : prefix, "expected an object");
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.contains(k)) bad_key(prefix.empty() ? k : prefix + "." + k, "unknown key");
  }
}

template <typename T>
void read(const json& obj, const char* name, const std::string& prefix, T& out) {
  auto it = obj.find(name);
  if (it == obj.end()) return;
  const std::string key = prefix.empty() ? name : prefix + "." + name;
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (!it->is_number()) bad_key(key, "expected a number");
    } else if constexpr (std::is_integral_v<T>) {
      if (!it->is_number_integer()) bad_key(key, "expected an integer");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!it->is_string()) bad_key(key, "expected a string");
    }
    out = it->get<T>();
  } catch (const json::exception& e) {
    bad_key(key, e.what());
  }
}

template <typename T, typename Pred>
void require(const T& value, Pred ok, const std::string& key, const char* why) {
  if (!ok(value)) bad_key(key, why);
}

fw::ChannelConfig parse_channel(const json& obj, const std::string& prefix) {
  check_keys(obj, prefix,
             {"id", "kind", "sensor", "gain", "interval_s", "conversion_ticks", "noise_sd_v",
              "default_quantity", "volts_per_c", "half_scale_ppm"});
  fw::ChannelConfig ch;
  if (!obj.contains("id")) bad_key(prefix + ".id", "required");
  read(obj, "id", prefix, ch.id);
  std::string kind = "analog";
  read(obj, "kind", prefix, kind);
  if (kind == "analog") ch.kind = fw::ChannelKind::kAnalog;
  else if (kind == "compass") ch.kind = fw::ChannelKind::kCompass;
  else bad_key(prefix + ".kind", "must be 'analog' or 'compass'");

  std::string sensor = "temperature";
  read(obj, "sensor", prefix, sensor);
  try {
    ch.sensor.transfer.kind = hw::sensor_kind_from(sensor);
  } catch (const Error& e) {
    bad_key(prefix + ".sensor", e.what());
  }
  read(obj, "gain", prefix, ch.gain);
  read(obj, "interval_s", prefix, ch.interval_s);
  read(obj, "conversion_ticks", prefix, ch.conversion_ticks);
  read(obj, "noise_sd_v", prefix, ch.sensor.noise_sd_v);
  read(obj, "default_quantity", prefix, ch.default_quantity);
  read(obj, "volts_per_c", prefix, ch.sensor.transfer.volts_per_c);
  read(obj, "half_scale_ppm", prefix, ch.sensor.transfer.half_scale_ppm);

  if (ch.kind == fw::ChannelKind::kAnalog) {
    require(ch.gain, hw::valid_gain, prefix + ".gain", "must be 1, 2, 4 or 8");
  }
  require(ch.interval_s, [](double v) { return v > 0.0; }, prefix + ".interval_s", "must be > 0");
  require(ch.conversion_ticks, [](std::int64_t v) { return v >= 1; },
          prefix + ".conversion_ticks", "must be >= 1");
  require(ch.sensor.noise_sd_v, [](double v) { return v >= 0.0; }, prefix + ".noise_sd_v",
          "must be >= 0");
  require(ch.sensor.transfer.volts_per_c, [](double v) { return v > 0.0; },
          prefix + ".volts_per_c", "must be > 0");
  require(ch.sensor.transfer.half_scale_ppm, [](double v) { return v > 0.0; },
          prefix + ".half_scale_ppm", "must be > 0");
  return ch;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) return base / path;
  return path;
}

}  // namespace

RobotConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  check_keys(doc, "",
             {"listen", "tick_us", "serial_latency_ticks", "step_rate_hz", "feedback_period_ms",
              "geometry", "initial_pose", "vref", "data_dir", "cockpit_dir", "footprint_capacity",
              "stream_backlog", "seed", "channels", "quantity_script", "quantities"});
  RobotConfig c = default_config();

  read(doc, "listen", "", c.listen);
  read(doc, "tick_us", "", c.tick_us);
  require(c.tick_us, [](sim::Micros v) { return v > 0; }, "tick_us", "must be > 0");
  read(doc, "serial_latency_ticks", "", c.serial_latency_ticks);
  require(c.serial_latency_ticks, [](std::int64_t v) { return v >= 0; }, "serial_latency_ticks",
          "must be >= 0");
  read(doc, "step_rate_hz", "", c.control.step_rate_hz);
  require(c.control.step_rate_hz, [](double v) { return v > 0.0; }, "step_rate_hz", "must be > 0");
  double fb_ms = static_cast<double>(c.control.feedback_period_us) / 1000.0;
  read(doc, "feedback_period_ms", "", fb_ms);
  require(fb_ms, [](double v) { return v > 0.0; }, "feedback_period_ms", "must be > 0");
  c.control.feedback_period_us = static_cast<sim::Micros>(fb_ms * 1000.0);
  if (c.control.feedback_period_us % c.tick_us != 0) {
    bad_key("feedback_period_ms", "must be a whole number of ticks");
  }

  if (auto it = doc.find("geometry"); it != doc.end()) {
    check_keys(*it, "geometry", {"wheel_diameter_m", "steps_per_rev", "wheelbase_m"});
    read(*it, "wheel_diameter_m", "geometry", c.geometry.wheel_diameter_m);
    read(*it, "steps_per_rev", "geometry", c.geometry.steps_per_rev);
    read(*it, "wheelbase_m", "geometry", c.geometry.wheelbase_m);
    require(c.geometry.wheel_diameter_m, [](double v) { return v > 0.0; },
            "geometry.wheel_diameter_m", "must be > 0");
    require(c.geometry.steps_per_rev, [](int v) { return v > 0; }, "geometry.steps_per_rev",
            "must be > 0");
    require(c.geometry.wheelbase_m, [](double v) { return v > 0.0; }, "geometry.wheelbase_m",
            "must be > 0");
  }
  if (auto it = doc.find("initial_pose"); it != doc.end()) {
    check_keys(*it, "initial_pose", {"x_m", "y_m", "heading_deg"});
    read(*it, "x_m", "initial_pose", c.initial_pose.x_m);
    read(*it, "y_m", "initial_pose", c.initial_pose.y_m);
    read(*it, "heading_deg", "initial_pose", c.initial_pose.heading_deg);
  }
  read(doc, "vref", "", c.vref);
  require(c.vref, [](double v) { return v > 0.0; }, "vref", "must be > 0");

  std::string path;
  if (doc.contains("data_dir")) {
    read(doc, "data_dir", "", path);
    c.data_dir = path.empty() ? std::filesystem::path{} : resolve(base_dir, path);
  }
  if (doc.contains("cockpit_dir")) {
    read(doc, "cockpit_dir", "", path);
    c.cockpit_dir = path.empty() ? std::filesystem::path{} : resolve(base_dir, path);
  }
  read(doc, "footprint_capacity", "", c.footprint_capacity);
  require(c.footprint_capacity, [](std::size_t v) { return v >= 1; }, "footprint_capacity",
          "must be >= 1");
  read(doc, "stream_backlog", "", c.stream_backlog);
  require(c.stream_backlog, [](std::size_t v) { return v >= 1; }, "stream_backlog", "must be >= 1");
  read(doc, "seed", "", c.seed);

  if (auto it = doc.find("channels"); it != doc.end()) {
    if (!it->is_array()) bad_key("channels", "expected an array");
    c.channels.clear();
    for (std::size_t i = 0; i < it->size(); ++i) {
      c.channels.push_back(parse_channel((*it)[i], "channels[" + std::to_string(i) + "]"));
    }
    try {
      fw::validate_channels(c.channels);
    } catch (const Error& e) {
      bad_key("channels", e.what());
    }
  }

  if (doc.contains("quantity_script")) {
    read(doc, "quantity_script", "", path);
    std::ifstream in(resolve(base_dir, path));
    if (!in) bad_key("quantity_script", "cannot open '" + path + "'");
    try {
      c.quantities = hw::QuantityScript::parse(in);
    } catch (const Error& e) {
      bad_key("quantity_script", e.what());
    }
  }
  if (doc.contains("quantities")) {
    std::string text;
    read(doc, "quantities", "", text);
    try {
      c.quantities = hw::QuantityScript::parse(std::string_view(text));
    } catch (const Error& e) {
      bad_key("quantities", e.what());
    }
  }
  return c;
}

RobotConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfig, "cannot open config file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfig, "config file '" + path.string() + "' is not valid JSON: " +
                                        e.what());
  }
  return parse_config(doc, path.parent_path());
}

void apply_env_overrides(RobotConfig& config) {
  if (const char* listen = std::getenv("LWR_LISTEN"); listen != nullptr && *listen != '\0') {
    config.listen = listen;
  }
}

}  // namespace lwr::robot
