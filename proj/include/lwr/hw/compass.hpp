#pragma once

#include <cstdint>

#include "lwr/hw/chassis.hpp"

namespace lwr::hw {

// CMPS03-style encodings of the chassis heading.
//   PWM: pulse width 1.0 ms + 0.1 ms per degree.
//   I2C register 1: heading as 0..255 for a full circle.
//   I2C registers 2,3: heading in tenths of a degree, high byte then low.
namespace compass {

double pwm_width_ms(double heading_deg);
double heading_from_pwm(double width_ms);

std::uint8_t i2c_register(double heading_deg, int reg);
std::uint16_t heading_tenths(double heading_deg);
double heading_from_byte(std::uint8_t reg1);

}  // namespace compass

double compass_pwm_read(const Chassis& chassis);

// Throws Error(kInvalidRegister) for any register other than 1, 2 or 3.
std::uint8_t compass_i2c_read(const Chassis& chassis, int reg);

}  // namespace lwr::hw
