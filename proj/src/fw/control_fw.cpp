#include "lwr/fw/control_fw.hpp"

#include <charconv>
#include <cmath>
#include <utility>

#include "lwr/error.hpp"
#include "lwr/hw/chassis.hpp"

namespace lwr::fw {

namespace {

constexpr std::size_t kMaxFrameLength = 24;

}  // namespace

ControlFirmware::ControlFirmware(const sim::SimClock& clock, sim::SerialLink& link,
                                 MotorPort motor_port, ControlConfig config)
    : clock_(clock), link_(link), motor_port_(std::move(motor_port)), config_(config) {
  if (!(config.step_rate_hz > 0.0) || config.feedback_period_us <= 0) {
    throw Error(ErrorCode::kPrecondition, "step rate and feedback period must be positive");
  }
  step_period_us_ = static_cast<sim::Micros>(std::llround(1e6 / config.step_rate_hz));
  if (step_period_us_ < 1) step_period_us_ = 1;
}

void ControlFirmware::tick() {
  command_loop_step();
  if (clock_.now_us() % config_.feedback_period_us == 0) emit_feedback();
}

void ControlFirmware::command_loop_step() {
  while (auto byte = link_.mcu_receive()) handle_byte(*byte);

  while (active_ != Motion::kStop && clock_.now_us() >= next_step_us_) {
    emit_step();
    next_step_us_ += step_period_us_;
    if (remaining_ && --*remaining_ == 0) {
      active_ = Motion::kStop;
      remaining_.reset();
      ++completed_moves_;
    }
  }
}

void ControlFirmware::bounded_move(Motion motion, std::int64_t steps) {
  if (steps < 1) throw Error(ErrorCode::kPrecondition, "bounded move needs steps >= 1");
  if (motion == Motion::kStop) {
    throw Error(ErrorCode::kPrecondition, "bounded move cannot be a stop");
  }
  start(motion, steps);
}

void ControlFirmware::emit_feedback() {
  const std::string line =
      "FB " + std::to_string(left_steps_) + " " + std::to_string(right_steps_) + "\n";
  for (char c : line) link_.mcu_send(static_cast<std::uint8_t>(c));
}

void ControlFirmware::handle_byte(std::uint8_t byte) {
  if (in_frame_) {
    if (byte == '\n') {
      finish_frame();
      return;
    }
    frame_.push_back(static_cast<char>(byte));
    if (frame_.size() > kMaxFrameLength) {
      in_frame_ = false;
      frame_.clear();
      ++unknown_bytes_;
    }
    return;
  }
  if (byte == 'M') {
    in_frame_ = true;
    frame_.clear();
    return;
  }
  if (auto motion = decode_command(byte)) {
    start(*motion, std::nullopt);
    return;
  }
  ++unknown_bytes_;
}

void ControlFirmware::finish_frame() {
  in_frame_ = false;
  std::string body = std::exchange(frame_, {});
  const auto motion = body.empty() ? std::nullopt
                                   : decode_command(static_cast<std::uint8_t>(body[0]));
  std::int64_t steps = 0;
  bool ok = motion.has_value() && *motion != Motion::kStop && body.size() > 1;
  if (ok) {
    const char* first = body.data() + 1;
    const char* last = body.data() + body.size();
    auto [p, ec] = std::from_chars(first, last, steps);
    ok = ec == std::errc{} && p == last && steps >= 1;
  }
  if (!ok) {
    ++unknown_bytes_;
    return;
  }
  start(*motion, steps);
}

void ControlFirmware::start(Motion motion, std::optional<std::int64_t> steps) {
  active_ = motion;
  remaining_ = motion == Motion::kStop ? std::nullopt : steps;
  next_step_us_ = clock_.now_us() + step_period_us_;
}

void ControlFirmware::emit_step() {
  const auto dir = wheel_steps(active_);
  if (dir.left > 0) left_phase_ = hw::next_phase(left_phase_);
  else if (dir.left < 0) left_phase_ = hw::prev_phase(left_phase_);
  if (dir.right > 0) right_phase_ = hw::next_phase(right_phase_);
  else if (dir.right < 0) right_phase_ = hw::prev_phase(right_phase_);
  left_steps_ += dir.left;
  right_steps_ += dir.right;
  ++phase_writes_;
  motor_port_(static_cast<std::uint8_t>((right_phase_ << 4) | left_phase_));
}

}  // namespace lwr::fw
