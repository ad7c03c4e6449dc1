#include "lwr/hw/compass.hpp"

#include <cmath>
#include <string>

#include "lwr/error.hpp"

namespace lwr::hw {
namespace compass {

double pwm_width_ms(double heading_deg) { return 1.0 + heading_deg * 0.1; }

double heading_from_pwm(double width_ms) { return (width_ms - 1.0) / 0.1; }

std::uint16_t heading_tenths(double heading_deg) {
  const auto tenths = static_cast<long>(std::lround(normalize_heading(heading_deg) * 10.0));
  return static_cast<std::uint16_t>(tenths % 3600);
}

std::uint8_t i2c_register(double heading_deg, int reg) {
  const double h = normalize_heading(heading_deg);
  switch (reg) {
    case 1:
      return static_cast<std::uint8_t>(std::floor(h * 256.0 / 360.0));
    case 2:
      return static_cast<std::uint8_t>(heading_tenths(h) >> 8);
    case 3:
      return static_cast<std::uint8_t>(heading_tenths(h) & 0xFF);
    default:
      throw Error(ErrorCode::kInvalidRegister,
                  "compass register " + std::to_string(reg) + " is not readable");
  }
}

double heading_from_byte(std::uint8_t reg1) { return reg1 * 360.0 / 256.0; }

}  // namespace compass

double compass_pwm_read(const Chassis& chassis) {
  return compass::pwm_width_ms(chassis.true_pose().heading_deg);
}

std::uint8_t compass_i2c_read(const Chassis& chassis, int reg) {
  return compass::i2c_register(chassis.true_pose().heading_deg, reg);
}

}  // namespace lwr::hw
