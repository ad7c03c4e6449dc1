#pragma once

#include <cstdint>
#include <numbers>

#include "lwr/hw/pose.hpp"

namespace lwr::hw {

// Default wheel diameter and wheelbase make one step exactly 1 mm and one
// counter-rotating step pair exactly 0.9 degrees.
struct Geometry {
  double wheel_diameter_m = 0.2 / std::numbers::pi;
  int steps_per_rev = 200;
  double wheelbase_m = 0.4 / std::numbers::pi;

  double step_length_m() const;
  // Heading change for one counter-rotating pair, degrees.
  double pair_rotation_deg() const;
};

// Full-step four-phase pattern cycle 0001 -> 0010 -> 0100 -> 1000 -> 0001.
class StepperChannel {
 public:
  // Returns the step taken: +1 successor, -1 predecessor, 0 same pattern or
  // invalid. Invalid patterns leave the channel untouched and count a fault.
  int apply(std::uint8_t nibble);

  std::uint8_t phase() const noexcept { return phase_; }
  std::int64_t step_count() const noexcept { return step_count_; }
  std::uint64_t faults() const noexcept { return faults_; }

 private:
  std::uint8_t phase_ = 0b0001;
  std::int64_t step_count_ = 0;
  std::uint64_t faults_ = 0;
};

std::uint8_t next_phase(std::uint8_t phase);
std::uint8_t prev_phase(std::uint8_t phase);

// Ground-truth differential-drive body behind one 8-bit darlington port:
// low nibble drives the left stepper, high nibble the right.
class Chassis {
 public:
  explicit Chassis(Geometry geometry = {}, Pose initial = {});

  void stepper_apply(std::uint8_t port_byte);

  const Pose& true_pose() const noexcept { return pose_; }
  const Geometry& geometry() const noexcept { return geometry_; }
  const StepperChannel& left() const noexcept { return left_; }
  const StepperChannel& right() const noexcept { return right_; }
  std::int64_t left_steps() const noexcept { return left_.step_count(); }
  std::int64_t right_steps() const noexcept { return right_.step_count(); }
  std::uint64_t faults() const noexcept { return left_.faults() + right_.faults(); }

 private:
  void integrate(int dl, int dr);

  Geometry geometry_;
  Pose pose_;
  StepperChannel left_;
  StepperChannel right_;
};

}  // namespace lwr::hw
