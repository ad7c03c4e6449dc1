#include "lwr/robot/robot.hpp"

#include <charconv>
#include <cmath>

#include "lwr/daps/calibrate.hpp"
#include "lwr/error.hpp"
#include "lwr/hw/compass.hpp"

namespace lwr::robot {

namespace {

constexpr std::size_t kMaxSerialLine = 64;

bool parse_feedback(std::string_view line, std::int64_t& left, std::int64_t& right) {
  if (line.substr(0, 3) != "FB ") return false;
  line.remove_prefix(3);
  const auto space = line.find(' ');
  if (space == std::string_view::npos) return false;
  const auto l = line.substr(0, space);
  const auto r = line.substr(space + 1);
  auto [p1, e1] = std::from_chars(l.data(), l.data() + l.size(), left);
  auto [p2, e2] = std::from_chars(r.data(), r.data() + r.size(), right);
  return e1 == std::errc{} && p1 == l.data() + l.size() && e2 == std::errc{} &&
         p2 == r.data() + r.size();
}

}  // namespace

Robot::Robot(RobotConfig config, std::ostream* bus_mirror)
    : config_(std::move(config)),
      bus_log_(bus_mirror),
      kernel_(config_.tick_us),
      serial_(kernel_.clock(), config_.serial_latency_ticks, &bus_log_),
      parallel_(&kernel_.clock(), &bus_log_),
      chassis_(config_.geometry, config_.initial_pose),
      adc_(config_.vref),
      estimator_(config_.geometry.step_length_m(), config_.initial_pose),
      footprint_(config_.footprint_capacity),
      store_(std::make_unique<daps::SampleStore>(config_.data_dir)) {
  if (config_.control.feedback_period_us % config_.tick_us != 0) {
    throw Error(ErrorCode::kConfig, "feedback period must be a whole number of ticks");
  }
  control_ = std::make_unique<fw::ControlFirmware>(
      kernel_.clock(), serial_,
      [this](std::uint8_t port) {
        bus_log_.append(sim::BusRecord{kernel_.now_us(), sim::BusId::kMotor, sim::BusDir::kOut, port});
        chassis_.stepper_apply(port);
      },
      config_.control);

  auto quantities = [this](const fw::ChannelConfig& ch, sim::Micros t_us) {
    const double t_s = static_cast<double>(t_us) / 1e6;
    return config_.quantities.value_at(ch.id, t_s).value_or(ch.default_quantity);
  };
  daq_ = std::make_unique<fw::DaqFirmware>(kernel_.clock(), parallel_, chassis_, adc_,
                                           config_.channels, quantities, config_.seed);

  kernel_.on_tick([this] { control_->tick(); });
  kernel_.on_tick([this] { daq_->tick(); });
  kernel_.on_tick([this] { host_tick(); });
}

const fw::ChannelConfig* Robot::channel(int id) const {
  for (const auto& ch : daq_->channels()) {
    if (ch.id == id) return &ch;
  }
  return nullptr;
}

void Robot::step(std::int64_t ticks) { kernel_.step(ticks); }

void Robot::run_until(sim::Micros t_us) {
  if (t_us <= kernel_.now_us()) return;
  const auto tick = kernel_.clock().tick_us();
  kernel_.step((t_us - kernel_.now_us() + tick - 1) / tick);
}

void Robot::run_for_seconds(double seconds) {
  run_until(kernel_.now_us() + static_cast<sim::Micros>(std::llround(seconds * 1e6)));
}

void Robot::drive(const DriveRequest& request) { send_serial(to_wire(request)); }

void Robot::send_serial(std::string_view bytes) {
  for (char c : bytes) serial_.host_send(static_cast<std::uint8_t>(c));
}

void Robot::host_tick() {
  ingest_parallel();
  ingest_serial();
}

void Robot::ingest_parallel() {
  if (!parallel_.strobe() && parallel_.ack()) parallel_.release_ack();
  if (parallel_.strobe() && !parallel_.ack()) {
    if (auto sample = decoder_.push(parallel_.read())) handle_sample(*sample);
  }
}

void Robot::ingest_serial() {
  while (auto byte = serial_.host_receive()) {
    if (*byte == '\n') {
      handle_feedback_line(serial_line_);
      serial_line_.clear();
    } else if (serial_line_.size() < kMaxSerialLine) {
      serial_line_.push_back(static_cast<char>(*byte));
    }
  }
}

void Robot::handle_feedback_line(std::string_view line) {
  std::int64_t left = 0;
  std::int64_t right = 0;
  if (!parse_feedback(line, left, right)) {
    ++counters_.bad_feedback_lines;
    return;
  }
  const auto hi = hw::compass_i2c_read(chassis_, 2);
  const auto lo = hw::compass_i2c_read(chassis_, 3);
  const double heading = ((hi << 8) | lo) / 10.0;
  const auto& est = estimator_.update(left, right, heading, kernel_.now_us());
  footprint_.record(est);
  ++counters_.feedback_frames;
  publish(EventKind::kFeedback);
}

void Robot::handle_sample(fw::Sample sample) {
  ++counters_.samples_decoded;
  sample.t_us = kernel_.now_us();
  if (const auto* ch = channel(sample.channel)) {
    sample.value = daps::calibrate(sample, *ch, config_.vref);
  }
  try {
    store_->persist(sample);
    ++counters_.samples_persisted;
  } catch (const Error& e) {
    // Monitoring failures must not stop the robot.
    ++counters_.storage_errors;
    counters_.last_storage_error = e.what();
  }
  latest_[sample.channel] = sample;
  publish(EventKind::kSample);
}

void Robot::publish(EventKind kind) {
  if (!sink_) return;
  TelemetryEvent ev;
  ev.kind = kind;
  ev.t_us = kernel_.now_us();
  ev.pose = estimator_.current().pose;
  ev.latest = latest_;
  sink_(ev);
}

}  // namespace lwr::robot
