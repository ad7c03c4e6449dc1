#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace lwr::fw {

enum class Motion : std::uint8_t { kStop, kTurnLeft, kTurnRight, kForward, kBackward };

// '0' stop, '1' turn left, '2' turn right, '3' forward, '4' backward.
std::optional<Motion> decode_command(std::uint8_t byte);
std::uint8_t command_code(Motion motion);

std::string_view to_string(Motion motion);

// Per-wheel step direction for a motion, (left, right).
struct WheelSteps {
  int left;
  int right;
};
WheelSteps wheel_steps(Motion motion);

}  // namespace lwr::fw
