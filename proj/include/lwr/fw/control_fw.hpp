#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "lwr/fw/drive_command.hpp"
#include "lwr/sim/clock.hpp"
#include "lwr/sim/serial_link.hpp"

namespace lwr::fw {

struct ControlConfig {
  double step_rate_hz = 100.0;
  sim::Micros feedback_period_us = 100'000;
};

// Emulated control microcontroller. Reads drive commands from the serial
// link, drives both steppers through one 8-bit port (low nibble left, high
// nibble right) and reports cumulative wheel steps as "FB <l> <r>\n".
//
// Host -> MCU wire: single bytes '0'..'4', or "M<code><n>\n" for a bounded
// move of n step pairs. Anything else is counted and ignored.
class ControlFirmware {
 public:
  using MotorPort = std::function<void(std::uint8_t)>;

  ControlFirmware(const sim::SimClock& clock, sim::SerialLink& link,
                  MotorPort motor_port, ControlConfig config = {});

  // One main-loop pass; call once per kernel tick.
  void tick();

  // Drains pending command bytes (latest wins) and emits the next phase
  // byte if one is due.
  void command_loop_step();

  // Throws Error(kPrecondition) for steps < 1 or a stop motion.
  void bounded_move(Motion motion, std::int64_t steps);

  void emit_feedback();

  Motion active() const noexcept { return active_; }
  bool idle() const noexcept { return active_ == Motion::kStop; }
  std::optional<std::int64_t> steps_remaining() const noexcept { return remaining_; }
  std::int64_t left_steps() const noexcept { return left_steps_; }
  std::int64_t right_steps() const noexcept { return right_steps_; }
  std::uint64_t unknown_bytes() const noexcept { return unknown_bytes_; }
  std::uint64_t completed_moves() const noexcept { return completed_moves_; }
  std::uint64_t phase_writes() const noexcept { return phase_writes_; }
  const ControlConfig& config() const noexcept { return config_; }

 private:
  void handle_byte(std::uint8_t byte);
  void start(Motion motion, std::optional<std::int64_t> steps);
  void finish_frame();
  void emit_step();

  const sim::SimClock& clock_;
  sim::SerialLink& link_;
  MotorPort motor_port_;
  ControlConfig config_;
  sim::Micros step_period_us_;

  Motion active_ = Motion::kStop;
  std::optional<std::int64_t> remaining_;
  sim::Micros next_step_us_ = 0;

  std::uint8_t left_phase_ = 0b0001;
  std::uint8_t right_phase_ = 0b0001;
  std::int64_t left_steps_ = 0;
  std::int64_t right_steps_ = 0;

  bool in_frame_ = false;
  std::string frame_;

  std::uint64_t unknown_bytes_ = 0;
  std::uint64_t completed_moves_ = 0;
  std::uint64_t phase_writes_ = 0;
};

}  // namespace lwr::fw
