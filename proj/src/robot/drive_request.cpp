#include "lwr/robot/drive_request.hpp"

#include "lwr/error.hpp"

namespace lwr::robot {

std::optional<fw::Motion> motion_from_direction(std::string_view direction) {
  if (direction == "forward") return fw::Motion::kForward;
  if (direction == "backward") return fw::Motion::kBackward;
  if (direction == "left") return fw::Motion::kTurnLeft;
  if (direction == "right") return fw::Motion::kTurnRight;
  if (direction == "stop") return fw::Motion::kStop;
  return std::nullopt;
}

std::string_view direction_name(fw::Motion motion) {
  switch (motion) {
    case fw::Motion::kForward: return "forward";
    case fw::Motion::kBackward: return "backward";
    case fw::Motion::kTurnLeft: return "left";
    case fw::Motion::kTurnRight: return "right";
    case fw::Motion::kStop: return "stop";
  }
  return "?";
}

DriveRequest make_drive_request(std::string_view direction, std::optional<std::int64_t> steps) {
  const auto motion = motion_from_direction(direction);
  if (!motion) {
    throw Error(ErrorCode::kParse, "unknown direction '" + std::string(direction) + "'");
  }
  if (*motion == fw::Motion::kStop && steps) {
    throw Error(ErrorCode::kParse, "stop does not take steps");
  }
  if (steps && *steps < 1) throw Error(ErrorCode::kParse, "steps must be >= 1");
  return DriveRequest{*motion, steps};
}

DriveRequest parse_drive_request(const nlohmann::json& body) {
  if (!body.is_object()) throw Error(ErrorCode::kParse, "body must be a JSON object");
  for (const auto& [key, value] : body.items()) {
    if (key != "direction" && key != "steps") {
      throw Error(ErrorCode::kParse, "unexpected field '" + key + "'");
    }
  }
  auto dir = body.find("direction");
  if (dir == body.end() || !dir->is_string()) {
    throw Error(ErrorCode::kParse, "'direction' must be a string");
  }
  std::optional<std::int64_t> steps;
  if (auto it = body.find("steps"); it != body.end() && !it->is_null()) {
    if (!it->is_number_integer()) throw Error(ErrorCode::kParse, "'steps' must be an integer");
    steps = it->get<std::int64_t>();
  }
  return make_drive_request(dir->get<std::string>(), steps);
}

std::string to_wire(const DriveRequest& request) {
  const auto code = static_cast<char>(fw::command_code(request.motion));
  if (!request.steps) return std::string(1, code);
  return "M" + std::string(1, code) + std::to_string(*request.steps) + "\n";
}

}  // namespace lwr::robot
