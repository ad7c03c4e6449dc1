#pragma once

#include <atomic>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "lwr/robot/robot.hpp"
#include "lwr/service/telemetry_hub.hpp"

namespace httplib {
class Server;
}

namespace lwr::service {

// kReal paces simulated time against the wall clock, kMax steps as fast as
// possible, kManual leaves stepping to the caller (tests, scripted runs).
enum class Speed { kReal, kMax, kManual };

Speed speed_from(std::string_view name);

// The main-unit web service: owns the simulated robot, runs the simulation
// loop and serves the HTTP API plus the telemetry stream.
//
//   POST /api/drive            {"direction": ..., "steps": n?}
//   GET  /api/pose
//   GET  /api/footprint?limit=N
//   GET  /api/data/{channel}?from&to&filter&window&bucket&stat
//   GET  /api/stream           text/event-stream of telemetry events
//   GET  /api/channels, /api/status
//   GET  /                     cockpit assets
class TeleopService {
 public:
  TeleopService(robot::RobotConfig config, Speed speed, std::ostream* bus_mirror = nullptr);
  ~TeleopService();

  TeleopService(const TeleopService&) = delete;
  TeleopService& operator=(const TeleopService&) = delete;

  void start_simulation();
  void stop_simulation();
  bool simulation_running() const noexcept { return sim_running_; }

  // Returns false when the address cannot be bound (e.g. port in use).
  // Port 0 picks a free port; see port().
  bool bind(const std::string& host, int port);
  int port() const noexcept { return port_; }

  // Blocks until stop().
  void listen();
  void listen_in_background();
  void stop();

  // Runs f(robot) under the robot lock.
  template <typename F>
  decltype(auto) with_robot(F&& f) {
    std::lock_guard lock(robot_mutex_);
    return f(*robot_);
  }

  TelemetryHub& hub() noexcept { return hub_; }

 private:
  void register_routes();
  void sim_loop();

  Speed speed_;
  std::unique_ptr<robot::Robot> robot_;
  std::mutex robot_mutex_;
  TelemetryHub hub_;
  std::unique_ptr<httplib::Server> server_;
  std::thread sim_thread_;
  std::thread http_thread_;
  std::atomic<bool> sim_running_{false};
  std::atomic<bool> stopping_{false};
  int port_ = 0;
};

}  // namespace lwr::service
