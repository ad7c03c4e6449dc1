#include "lwr/cli/scenario.hpp"

#include <fmt/format.h>

#include <cmath>
#include <istream>
#include <sstream>

#include "lwr/error.hpp"
#include "lwr/robot/robot.hpp"

namespace lwr::cli {

namespace {

[[noreturn]] void parse_error(int line, const std::string& why) {
  throw Error(ErrorCode::kParse, fmt::format("scenario line {}: {}", line, why));
}

double number(const std::vector<std::string>& f, std::size_t i, int line, const char* what) {
  if (i >= f.size()) parse_error(line, fmt::format("missing {}", what));
  try {
    std::size_t used = 0;
    const double v = std::stod(f[i], &used);
    if (used != f[i].size() || !std::isfinite(v)) throw std::invalid_argument(f[i]);
    return v;
  } catch (const std::logic_error&) {
    parse_error(line, fmt::format("bad {} '{}'", what, f[i]));
  }
}

// Reads "tol <v>" / "htol <v>" pairs starting at index i.
void tolerances(const std::vector<std::string>& f, std::size_t i, int line, double* tol,
                double* htol) {
  while (i < f.size()) {
    if (f[i] == "tol" && tol != nullptr) {
      *tol = number(f, i + 1, line, "tolerance");
    } else if (f[i] == "htol" && htol != nullptr) {
      *htol = number(f, i + 1, line, "heading tolerance");
    } else {
      parse_error(line, fmt::format("unexpected '{}'", f[i]));
    }
    i += 2;
  }
}

}  // namespace

std::vector<Directive> parse_scenario(std::istream& in) {
  std::vector<Directive> out;
  std::string raw;
  int line_no = 0;
  double last_t = 0.0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::vector<std::string> f;
    for (std::string tok; ss >> tok;) f.push_back(tok);
    if (f.empty()) continue;

    Directive d;
    d.line = line_no;
    d.t_s = number(f, 0, line_no, "time");
    if (d.t_s < 0.0) parse_error(line_no, "time must be >= 0");
    if (d.t_s < last_t) parse_error(line_no, "time goes backwards");
    last_t = d.t_s;
    if (f.size() < 2) parse_error(line_no, "missing directive");
    auto& text = d.text;
    for (std::size_t i = 1; i < f.size(); ++i) text += (i > 1 ? " " : "") + f[i];

    if (f[1] == "drive") {
      if (f.size() < 3 || f.size() > 4) parse_error(line_no, "usage: drive <direction> [steps]");
      std::optional<std::int64_t> steps;
      if (f.size() == 4) {
        const double n = number(f, 3, line_no, "step count");
        if (n != std::floor(n)) parse_error(line_no, "step count must be an integer");
        steps = static_cast<std::int64_t>(n);
      }
      try {
        d.action = DriveDirective{robot::make_drive_request(f[2], steps)};
      } catch (const Error& e) {
        parse_error(line_no, e.what());
      }
    } else if (f[1] == "assert" && f.size() >= 3 && f[2] == "pose") {
      PoseAssertion a;
      a.x_m = number(f, 3, line_no, "x");
      a.y_m = number(f, 4, line_no, "y");
      a.heading_deg = number(f, 5, line_no, "heading");
      tolerances(f, 6, line_no, &a.tol_m, &a.htol_deg);
      d.action = a;
    } else if (f[1] == "assert" && f.size() >= 3 && f[2] == "truth") {
      TruthAssertion a;
      tolerances(f, 3, line_no, &a.tol_m, nullptr);
      d.action = a;
    } else {
      parse_error(line_no, fmt::format("unknown directive '{}'", f[1]));
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<Directive> parse_scenario(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_scenario(in);
}

std::string ScenarioReport::text() const {
  std::string out;
  for (const auto& a : assertions) {
    out += fmt::format("line {}: {} ... {} ({})\n", a.line, a.text, a.passed ? "PASS" : "FAIL",
                       a.detail);
  }
  out += fmt::format("{} assertions, {} failed\n", assertions.size(), failures);
  return out;
}

ScenarioReport run_scenario(const std::vector<Directive>& script, robot::RobotConfig config,
                            std::ostream* bus_mirror) {
  robot::Robot robot(std::move(config), bus_mirror);
  robot.bus_log().set_retain(false);
  ScenarioReport report;

  for (const auto& d : script) {
    robot.run_until(static_cast<sim::Micros>(std::llround(d.t_s * 1e6)));
    const auto& est = robot.pose().pose;

    if (const auto* drive = std::get_if<DriveDirective>(&d.action)) {
      robot.drive(drive->request);
    } else if (const auto* pose = std::get_if<PoseAssertion>(&d.action)) {
      const double dist = std::hypot(est.x_m - pose->x_m, est.y_m - pose->y_m);
      const double dh = std::abs(hw::heading_difference(est.heading_deg, pose->heading_deg));
      AssertionResult r{d.line, d.text, dist <= pose->tol_m && dh <= pose->htol_deg,
                        fmt::format("est {:.9f} {:.9f} {:.4f}; |dp| {:.3g} m, |dh| {:.3g} deg",
                                    est.x_m, est.y_m, est.heading_deg, dist, dh)};
      report.assertions.push_back(std::move(r));
    } else if (const auto* truth = std::get_if<TruthAssertion>(&d.action)) {
      const auto& gt = robot.chassis().true_pose();
      const double dist = std::hypot(est.x_m - gt.x_m, est.y_m - gt.y_m);
      AssertionResult r{d.line, d.text, dist <= truth->tol_m,
                        fmt::format("est {:.9f} {:.9f}; truth {:.9f} {:.9f}; |dp| {:.3g} m",
                                    est.x_m, est.y_m, gt.x_m, gt.y_m, dist)};
      report.assertions.push_back(std::move(r));
    }
  }
  for (const auto& a : report.assertions) {
    if (!a.passed) ++report.failures;
  }
  return report;
}

}  // namespace lwr::cli
