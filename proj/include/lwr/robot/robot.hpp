#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "lwr/daps/frame_decoder.hpp"
#include "lwr/daps/store.hpp"
#include "lwr/fw/control_fw.hpp"
#include "lwr/fw/daq_fw.hpp"
#include "lwr/hw/adc.hpp"
#include "lwr/hw/chassis.hpp"
#include "lwr/nav/estimator.hpp"
#include "lwr/nav/footprint.hpp"
#include "lwr/robot/config.hpp"
#include "lwr/robot/drive_request.hpp"
#include "lwr/sim/bus_log.hpp"
#include "lwr/sim/kernel.hpp"
#include "lwr/sim/parallel_bus.hpp"
#include "lwr/sim/serial_link.hpp"

namespace lwr::robot {

enum class EventKind { kFeedback, kSample };

struct TelemetryEvent {
  EventKind kind = EventKind::kFeedback;
  sim::Micros t_us = 0;
  hw::Pose pose;
  std::map<int, fw::Sample> latest;
};

struct HostCounters {
  std::uint64_t feedback_frames = 0;
  std::uint64_t bad_feedback_lines = 0;
  std::uint64_t samples_decoded = 0;
  std::uint64_t samples_persisted = 0;
  std::uint64_t storage_errors = 0;
  std::string last_storage_error;
};

// The whole robot on one simulation kernel: the two emulated
// microcontrollers, the virtual hardware they drive, and the main-unit host
// software that ingests feedback and sample frames.
//
// Per tick: control firmware, then DAQ firmware, then host ingestion.
// Not thread-safe; the service serializes access.
class Robot {
 public:
  using EventSink = std::function<void(const TelemetryEvent&)>;

  // bus_mirror, when set, receives every bus record line as it happens.
  explicit Robot(RobotConfig config, std::ostream* bus_mirror = nullptr);

  Robot(const Robot&) = delete;
  Robot& operator=(const Robot&) = delete;

  void step(std::int64_t ticks = 1);
  void run_until(sim::Micros t_us);
  void run_for_seconds(double seconds);

  // Writes the request's serial bytes as one uninterrupted run.
  void drive(const DriveRequest& request);
  void send_serial(std::string_view bytes);

  sim::Micros now_us() const noexcept { return kernel_.now_us(); }
  const nav::EstimatedPose& pose() const noexcept { return estimator_.current(); }
  const nav::FootprintTrace& footprint() const noexcept { return footprint_; }
  const hw::Chassis& chassis() const noexcept { return chassis_; }
  const fw::ControlFirmware& control() const noexcept { return *control_; }
  const fw::DaqFirmware& daq() const noexcept { return *daq_; }
  fw::DaqFirmware& daq() noexcept { return *daq_; }
  const daps::FrameDecoder& decoder() const noexcept { return decoder_; }
  const daps::SampleStore& store() const noexcept { return *store_; }
  const sim::BusLog& bus_log() const noexcept { return bus_log_; }
  sim::BusLog& bus_log() noexcept { return bus_log_; }
  const RobotConfig& config() const noexcept { return config_; }
  const HostCounters& counters() const noexcept { return counters_; }
  const std::map<int, fw::Sample>& latest_samples() const noexcept { return latest_; }
  const fw::ChannelConfig* channel(int id) const;

  void set_event_sink(EventSink sink) { sink_ = std::move(sink); }

 private:
  void host_tick();
  void ingest_serial();
  void ingest_parallel();
  void handle_feedback_line(std::string_view line);
  void handle_sample(fw::Sample sample);
  void publish(EventKind kind);

  RobotConfig config_;
  sim::BusLog bus_log_;
  sim::Kernel kernel_;
  sim::SerialLink serial_;
  sim::ParallelBus parallel_;
  hw::Chassis chassis_;
  hw::AdcPga adc_;
  std::unique_ptr<fw::ControlFirmware> control_;
  std::unique_ptr<fw::DaqFirmware> daq_;

  nav::PoseEstimator estimator_;
  nav::FootprintTrace footprint_;
  daps::FrameDecoder decoder_;
  std::unique_ptr<daps::SampleStore> store_;
  std::string serial_line_;
  std::map<int, fw::Sample> latest_;
  HostCounters counters_;
  EventSink sink_;
};

}  // namespace lwr::robot
