#include "lwr/fw/drive_command.hpp"

namespace lwr::fw {

std::optional<Motion> decode_command(std::uint8_t byte) {
  switch (byte) {
    case '0': return Motion::kStop;
    case '1': return Motion::kTurnLeft;
    case '2': return Motion::kTurnRight;
    case '3': return Motion::kForward;
    case '4': return Motion::kBackward;
    default: return std::nullopt;
  }
}

std::uint8_t command_code(Motion motion) {
  return static_cast<std::uint8_t>('0' + static_cast<int>(motion));
}

std::string_view to_string(Motion motion) {
  switch (motion) {
    case Motion::kStop: return "stop";
    case Motion::kTurnLeft: return "turn_left";
    case Motion::kTurnRight: return "turn_right";
    case Motion::kForward: return "forward";
    case Motion::kBackward: return "backward";
  }
  return "?";
}

WheelSteps wheel_steps(Motion motion) {
  switch (motion) {
    case Motion::kForward: return {1, 1};
    case Motion::kBackward: return {-1, -1};
    case Motion::kTurnLeft: return {-1, 1};
    case Motion::kTurnRight: return {1, -1};
    case Motion::kStop: break;
  }
  return {0, 0};
}

}  // namespace lwr::fw
