#include "lwr/hw/chassis.hpp"

#include <cmath>

#include "lwr/error.hpp"

namespace lwr::hw {

double Geometry::step_length_m() const {
  return std::numbers::pi * wheel_diameter_m / steps_per_rev;
}

double Geometry::pair_rotation_deg() const {
  return step_length_m() / (wheelbase_m / 2.0) * (180.0 / std::numbers::pi);
}

namespace {

bool valid_phase(std::uint8_t p) {
  return p == 0b0001 || p == 0b0010 || p == 0b0100 || p == 0b1000;
}

}  // namespace

std::uint8_t next_phase(std::uint8_t phase) {
  return phase == 0b1000 ? 0b0001 : static_cast<std::uint8_t>(phase << 1);
}

std::uint8_t prev_phase(std::uint8_t phase) {
  return phase == 0b0001 ? 0b1000 : static_cast<std::uint8_t>(phase >> 1);
}

int StepperChannel::apply(std::uint8_t nibble) {
  nibble &= 0x0F;
  if (nibble == phase_) return 0;
  if (!valid_phase(nibble)) {
    ++faults_;
    return 0;
  }
  int delta = 0;
  if (nibble == next_phase(phase_)) delta = 1;
  else if (nibble == prev_phase(phase_)) delta = -1;
  else {
    // Opposite phase: the rotor cannot tell which way to go.
    ++faults_;
    return 0;
  }
  phase_ = nibble;
  step_count_ += delta;
  return delta;
}

Chassis::Chassis(Geometry geometry, Pose initial)
    : geometry_(geometry), pose_(initial) {
  if (geometry.wheel_diameter_m <= 0 || geometry.steps_per_rev <= 0 ||
      geometry.wheelbase_m <= 0) {
    throw Error(ErrorCode::kPrecondition, "chassis geometry must be positive");
  }
  pose_.heading_deg = normalize_heading(pose_.heading_deg);
}

void Chassis::stepper_apply(std::uint8_t port_byte) {
  const int dl = left_.apply(port_byte & 0x0F);
  const int dr = right_.apply(static_cast<std::uint8_t>(port_byte >> 4));
  if (dl != 0 || dr != 0) integrate(dl, dr);
}

void Chassis::integrate(int dl, int dr) {
  const double s = geometry_.step_length_m();
  const double half_base = geometry_.wheelbase_m / 2.0;
  const double theta = deg_to_rad(pose_.heading_deg);

  if (dl == dr) {
    pose_.x_m += dl * s * std::sin(theta);
    pose_.y_m += dl * s * std::cos(theta);
    return;
  }
  if (dl == -dr) {
    // Spin in place; left forward turns clockwise.
    pose_.heading_deg = normalize_heading(pose_.heading_deg + dl * geometry_.pair_rotation_deg());
    return;
  }

  // One wheel stationary: pivot about it. The right-hand unit vector is
  // (cos, -sin) of the heading.
  const double pivot_deg = s / geometry_.wheelbase_m * (180.0 / std::numbers::pi);
  double side = 0.0;  // +1 pivot on right wheel, -1 on left wheel
  double turn = 0.0;
  if (dr == 0) {
    side = 1.0;
    turn = dl * pivot_deg;
  } else {
    side = -1.0;
    turn = -dr * pivot_deg;
  }
  const double px = pose_.x_m + side * half_base * std::cos(theta);
  const double py = pose_.y_m - side * half_base * std::sin(theta);
  pose_.heading_deg = normalize_heading(pose_.heading_deg + turn);
  const double t2 = deg_to_rad(pose_.heading_deg);
  pose_.x_m = px - side * half_base * std::cos(t2);
  pose_.y_m = py + side * half_base * std::sin(t2);
}

}  // namespace lwr::hw
