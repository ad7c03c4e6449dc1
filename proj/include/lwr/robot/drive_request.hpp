#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "lwr/fw/drive_command.hpp"

namespace lwr::robot {

// Web-facing drive request. stop never carries steps; steps >= 1 otherwise.
struct DriveRequest {
  fw::Motion motion = fw::Motion::kStop;
  std::optional<std::int64_t> steps;
};

// forward, backward, left, right, stop.
std::optional<fw::Motion> motion_from_direction(std::string_view direction);
std::string_view direction_name(fw::Motion motion);

// Throws Error(kParse) with a reason suitable for a 400 response.
DriveRequest parse_drive_request(const nlohmann::json& body);
DriveRequest make_drive_request(std::string_view direction, std::optional<std::int64_t> steps);

// Serial bytes for the request: "3" or "M3200\n".
std::string to_wire(const DriveRequest& request);

}  // namespace lwr::robot
