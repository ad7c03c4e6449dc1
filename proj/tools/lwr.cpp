// lwr: operator entry points for the simulated modular wireless robot.
//
//   lwr serve    [--config c.json] [--listen host:port] [--seed n] [--speed real|max]
//   lwr scenario <script> [--config c.json] [--seed n] [--bus-log file]
//   lwr replay   <log> [--config c.json]

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "lwr/cli/replay.hpp"
#include "lwr/cli/scenario.hpp"
#include "lwr/error.hpp"
#include "lwr/robot/config.hpp"
#include "lwr/service/teleop_service.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitAddressInUse = 3;

lwr::service::TeleopService* g_service = nullptr;

void on_signal(int) {
  if (g_service != nullptr) g_service->stop();
}

std::pair<std::string, int> split_listen(const std::string& listen) {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) {
    throw lwr::Error(lwr::ErrorCode::kConfig, "config key 'listen': expected host:port");
  }
  int port = -1;
  try {
    port = std::stoi(listen.substr(colon + 1));
  } catch (const std::logic_error&) {
  }
  if (port < 0 || port > 65535) {
    throw lwr::Error(lwr::ErrorCode::kConfig, "config key 'listen': bad port in '" + listen + "'");
  }
  return {listen.substr(0, colon), port};
}

lwr::robot::RobotConfig load(const std::string& path, std::optional<std::uint64_t> seed) {
  auto config = path.empty() ? lwr::robot::default_config() : lwr::robot::load_config(path);
  if (seed) config.seed = *seed;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulated modular wireless robot: main-unit service and tools"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string bus_log_path;

  auto* serve = app.add_subcommand("serve", "Run the simulator and the web service");
  std::string listen;
  std::string speed = "real";
  serve->add_option("--config", config_path, "JSON config file");
  serve->add_option("--listen", listen, "host:port (overrides config and LWR_LISTEN)");
  serve->add_option("--seed", seed, "noise seed");
  serve->add_option("--speed", speed, "real or max")->check(CLI::IsMember({"real", "max"}));
  serve->add_option("--bus-log", bus_log_path, "write bus traffic to this file");

  auto* scenario = app.add_subcommand("scenario", "Run a scripted scenario headless");
  std::string script_path;
  scenario->add_option("script", script_path, "scenario script")->required();
  scenario->add_option("--config", config_path, "JSON config file");
  scenario->add_option("--seed", seed, "noise seed");
  scenario->add_option("--bus-log", bus_log_path, "write bus traffic to this file");

  auto* replay = app.add_subcommand("replay", "Verify a bus-traffic or sample log");
  std::string log_path;
  replay->add_option("log", log_path, "log file")->required();
  replay->add_option("--config", config_path, "JSON config file (geometry)");

  CLI11_PARSE(app, argc, argv);

  try {
    std::unique_ptr<std::ofstream> bus_log;
    if (!bus_log_path.empty()) {
      bus_log = std::make_unique<std::ofstream>(bus_log_path);
      if (!*bus_log) {
        std::cerr << "error: cannot write bus log '" << bus_log_path << "'\n";
        return kExitUsage;
      }
    }

    if (*serve) {
      auto config = load(config_path, seed);
      lwr::robot::apply_env_overrides(config);
      if (!listen.empty()) config.listen = listen;
      const auto [host, port] = split_listen(config.listen);

      lwr::service::TeleopService service(config, lwr::service::speed_from(speed), bus_log.get());
      if (!service.bind(host, port)) {
        std::cerr << "error: address in use or unavailable: " << config.listen << "\n";
        return kExitAddressInUse;
      }
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      service.start_simulation();
      std::cout << "serving on http://" << host << ":" << service.port() << "/" << std::endl;
      service.listen();
      service.stop();
      g_service = nullptr;
      if (bus_log) bus_log->flush();
      std::cout << "stopped" << std::endl;
      return 0;
    }

    if (*scenario) {
      std::ifstream in(script_path);
      if (!in) {
        std::cerr << "error: cannot open scenario '" << script_path << "'\n";
        return kExitUsage;
      }
      const auto script = lwr::cli::parse_scenario(in);
      const auto report = lwr::cli::run_scenario(script, load(config_path, seed), bus_log.get());
      std::cout << report.text();
      return report.ok() ? 0 : kExitFailure;
    }

    if (*replay) {
      std::ifstream in(log_path);
      if (!in) {
        std::cerr << "error: cannot open log '" << log_path << "'\n";
        return kExitUsage;
      }
      const auto config = load(config_path, std::nullopt);
      const auto report = lwr::cli::replay(in, config.geometry, config.initial_pose);
      std::cout << report.text();
      return report.ok() ? 0 : kExitFailure;
    }
  } catch (const lwr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == lwr::ErrorCode::kConfig || e.code() == lwr::ErrorCode::kParse
               ? kExitUsage
               : kExitFailure;
  }
  return 0;
}
