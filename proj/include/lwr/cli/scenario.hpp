#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lwr/robot/config.hpp"
#include "lwr/robot/drive_request.hpp"

namespace lwr::cli {

// Scenario script, one directive per line, times in seconds, '#' comments:
//
//   <t_s> drive <forward|backward|left|right|stop> [steps]
//   <t_s> assert pose <x_m> <y_m> <heading_deg> [tol <m>] [htol <deg>]
//   <t_s> assert truth [tol <m>]
//
// "assert truth" compares the estimated pose with the simulator's ground
// truth. Times must not decrease.
struct DriveDirective {
  robot::DriveRequest request;
};

struct PoseAssertion {
  double x_m = 0.0;
  double y_m = 0.0;
  double heading_deg = 0.0;
  double tol_m = 1e-6;
  double htol_deg = 0.05;
};

struct TruthAssertion {
  double tol_m = 1e-6;
};

struct Directive {
  int line = 0;
  double t_s = 0.0;
  std::string text;
  std::variant<DriveDirective, PoseAssertion, TruthAssertion> action;
};

// Throws Error(kParse) naming the offending line.
std::vector<Directive> parse_scenario(std::istream& in);
std::vector<Directive> parse_scenario(std::string_view text);

struct AssertionResult {
  int line = 0;
  std::string text;
  bool passed = false;
  std::string detail;
};

struct ScenarioReport {
  std::vector<AssertionResult> assertions;
  std::size_t failures = 0;
  bool ok() const noexcept { return failures == 0; }
  std::string text() const;
};

// Runs headless at maximum speed on a fresh robot. bus_mirror receives the
// traffic log.
ScenarioReport run_scenario(const std::vector<Directive>& script, robot::RobotConfig config,
                            std::ostream* bus_mirror = nullptr);

}  // namespace lwr::cli
