#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "lwr/robot/robot.hpp"

using namespace lwr;
using namespace lwr::robot;

TEST_CASE("idle robot still reports at feedback cadence") {
  Robot robot(default_config());
  std::vector<TelemetryEvent> events;
  robot.set_event_sink([&](const TelemetryEvent& ev) { events.push_back(ev); });
  robot.run_for_seconds(1.0);
  CHECK(robot.counters().feedback_frames == 10);
  CHECK(robot.footprint().size() == 10);
  CHECK(robot.pose().updated_us == 1'000'000);
  CHECK(robot.pose().pose == hw::Pose{});
  std::size_t feedback = 0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (i > 0) CHECK(events[i].t_us >= events[i - 1].t_us);
    feedback += events[i].kind == EventKind::kFeedback;
  }
  CHECK(feedback == 10);
}

TEST_CASE("every channel is sampled, calibrated and persisted at start-up") {
  Robot robot(default_config());
  robot.run_for_seconds(1.0);
  CHECK(robot.counters().samples_persisted == 4);
  for (int ch = 0; ch < 4; ++ch) CHECK(robot.store().count(ch) == 1);
  // 25 C at gain 4: floor(0.25 * 4 / 5 * 1023 + 0.5) = 205.
  const auto t = robot.store().all(1).front();
  CHECK(t.raw == 205);
  CHECK(t.value == doctest::Approx(205.0 / 1023.0 * 5.0 / 4.0 / 0.01));
  // 50 ppm gas at gain 1: v = 5 * 50 / 250 = 1.0 V -> floor(204.6 + 0.5) = 205.
  CHECK(robot.store().all(2).front().raw == 205);
  CHECK(robot.store().all(0).front().raw == 0);
  CHECK(robot.latest_samples().size() == 4);
  CHECK(robot.decoder().errors() == 0);
}

TEST_CASE("bounded forward move reaches 0.200 m") {
  Robot robot(default_config());
  robot.drive(make_drive_request("forward", 200));
  robot.run_for_seconds(3.0);
  CHECK(robot.control().idle());
  CHECK(std::abs(robot.pose().pose.y_m - 0.200) < 1e-9);
  CHECK(std::abs(robot.pose().pose.x_m) < 1e-9);
  CHECK(robot.chassis().true_pose().y_m == doctest::Approx(0.2));
}

TEST_CASE("stop halts motion within one tick") {
  Robot robot(default_config());
  robot.drive(make_drive_request("forward", std::nullopt));
  robot.run_for_seconds(0.5);
  robot.drive(make_drive_request("stop", std::nullopt));
  robot.step(1);
  const auto steps = robot.chassis().left_steps();
  robot.run_for_seconds(1.0);
  CHECK(robot.chassis().left_steps() == steps);
  CHECK(robot.control().active() == fw::Motion::kStop);
}

TEST_CASE("right turn raises the heading by 90 degrees") {
  Robot robot(default_config());
  robot.drive(make_drive_request("right", 100));
  robot.run_for_seconds(2.0);
  CHECK(robot.pose().pose.heading_deg == doctest::Approx(90.0).epsilon(1e-12));
  CHECK(std::abs(robot.pose().pose.x_m) < 1e-12);
}

TEST_CASE("the bus mirror carries the same text as the log") {
  std::ostringstream mirror;
  Robot robot(default_config(), &mirror);
  robot.drive(make_drive_request("left", 5));
  robot.run_for_seconds(0.5);
  CHECK(mirror.str() == robot.bus_log().text());
  CHECK(mirror.str().find(" serial h2m 4D\n") != std::string::npos);
  CHECK(mirror.str().find(" motor out ") != std::string::npos);
  CHECK(mirror.str().find(" parallel m2h A5\n") != std::string::npos);
}

TEST_CASE("a storage failure is counted and the robot keeps going") {
  auto config = default_config();
  config.data_dir = std::filesystem::temp_directory_path() / "lwr_test_robot_store";
  std::filesystem::remove_all(config.data_dir);
  std::filesystem::create_directories(config.data_dir / "ch2.log");
  Robot robot(config);
  robot.drive(make_drive_request("forward", 50));
  robot.run_for_seconds(1.0);
  CHECK(robot.counters().storage_errors == 1);
  CHECK(robot.counters().samples_persisted == 3);
  CHECK(robot.latest_samples().count(2) == 1);
  CHECK(robot.pose().pose.y_m == doctest::Approx(0.05));
  std::filesystem::remove_all(config.data_dir);
}
