#include "lwr/service/teleop_service.hpp"

#include <httplib.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>

#include "lwr/daps/calibrate.hpp"
#include "lwr/daps/series.hpp"
#include "lwr/error.hpp"

namespace lwr::service {

using nlohmann::json;

namespace {

constexpr const char* kJson = "application/json";

constexpr const char* kIndexHtml = R"(<!doctype html>
<html><head><meta charset="utf-8"><title>LWR main unit</title></head>
<body>
<h1>LWR main unit</h1>
<p>No cockpit bundle is installed; the API is available directly:</p>
<ul>
<li>POST /api/drive {"direction": "forward|backward|left|right|stop", "steps": n}</li>
<li>GET /api/pose</li>
<li>GET /api/footprint?limit=N</li>
<li>GET /api/data/{channel}?from=&amp;to=&amp;filter=&amp;window=&amp;bucket=&amp;stat=</li>
<li>GET /api/stream (Server-Sent Events)</li>
<li>GET /api/channels, GET /api/status</li>
</ul>
</body></html>
)";

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void reply_error(httplib::Response& res, int status, const std::string& message) {
  reply(res, status, json{{"error", message}});
}

std::optional<double> param_double(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) return std::nullopt;
  const auto text = req.get_param_value(name);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::kParse, std::string("parameter '") + name + "' is not a number");
  }
  if (used != text.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::kParse, std::string("parameter '") + name + "' is not a number");
  }
  return v;
}

std::optional<long long> param_int(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) return std::nullopt;
  const auto text = req.get_param_value(name);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::kParse, std::string("parameter '") + name + "' is not an integer");
  }
  if (used != text.size()) {
    throw Error(ErrorCode::kParse, std::string("parameter '") + name + "' is not an integer");
  }
  return v;
}

json pose_json(const nav::EstimatedPose& est) {
  return json{{"x_m", est.pose.x_m},
              {"y_m", est.pose.y_m},
              {"heading_deg", est.pose.heading_deg},
              {"t_us", est.updated_us}};
}

json channel_json(const fw::ChannelConfig& ch) {
  json j{{"id", ch.id},
         {"kind", fw::to_string(ch.kind)},
         {"interval_s", ch.interval_s},
         {"unit", daps::unit_for(ch)}};
  if (ch.kind == fw::ChannelKind::kAnalog) {
    j["gain"] = ch.gain;
    j["sensor"] = hw::to_string(ch.sensor.transfer.kind);
  }
  return j;
}

}  // namespace

Speed speed_from(std::string_view name) {
  if (name == "real") return Speed::kReal;
  if (name == "max") return Speed::kMax;
  if (name == "manual") return Speed::kManual;
  throw Error(ErrorCode::kParse, "speed must be 'real' or 'max'");
}

TeleopService::TeleopService(robot::RobotConfig config, Speed speed, std::ostream* bus_mirror)
    : speed_(speed),
      hub_(config.stream_backlog),
      server_(std::make_unique<httplib::Server>()) {
  robot_ = std::make_unique<robot::Robot>(std::move(config), bus_mirror);
  // A long-running service keeps traffic only in the mirror.
  robot_->bus_log().set_retain(false);
  robot_->daq().set_keep_conversions(false);
  robot_->set_event_sink([this](const robot::TelemetryEvent& ev) { hub_.publish(ev); });
  register_routes();
}

TeleopService::~TeleopService() { stop(); }

void TeleopService::start_simulation() {
  if (sim_running_.exchange(true)) return;
  if (speed_ != Speed::kManual) sim_thread_ = std::thread([this] { sim_loop(); });
}

void TeleopService::stop_simulation() {
  sim_running_ = false;
  if (sim_thread_.joinable()) sim_thread_.join();
}

void TeleopService::sim_loop() {
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  sim::Micros sim_start = 0;
  {
    std::lock_guard lock(robot_mutex_);
    sim_start = robot_->now_us();
  }
  while (sim_running_) {
    if (speed_ == Speed::kMax) {
      {
        std::lock_guard lock(robot_mutex_);
        robot_->step(100);
      }
      // Let API threads get at the lock between batches.
      std::this_thread::yield();
      continue;
    }
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - started).count();
    {
      std::lock_guard lock(robot_mutex_);
      robot_->run_until(sim_start + elapsed);
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }
}

bool TeleopService::bind(const std::string& host, int port) {
  if (port == 0) {
    port_ = server_->bind_to_any_port(host);
    return port_ > 0;
  }
  if (!server_->bind_to_port(host, port)) return false;
  port_ = port;
  return true;
}

void TeleopService::listen() { server_->listen_after_bind(); }

void TeleopService::listen_in_background() {
  http_thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

void TeleopService::stop() {
  if (stopping_.exchange(true)) return;
  hub_.close_all();
  server_->stop();
  if (http_thread_.joinable()) http_thread_.join();
  stop_simulation();
}

void TeleopService::register_routes() {
  auto& srv = *server_;

  // No SO_REUSEPORT: a second instance on the same port must fail to bind.
  srv.set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });

  srv.set_exception_handler([](const httplib::Request&, httplib::Response& res,
                               std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      reply_error(res, 500, e.what());
    }
  });

  srv.Post("/api/drive", [this](const httplib::Request& req, httplib::Response& res) {
    robot::DriveRequest request;
    try {
      request = robot::parse_drive_request(json::parse(req.body));
    } catch (const json::exception& e) {
      return reply_error(res, 400, std::string("malformed JSON: ") + e.what());
    } catch (const Error& e) {
      return reply_error(res, 400, e.what());
    }
    if (!sim_running_) return reply_error(res, 503, "simulator not running");
    try {
      std::lock_guard lock(robot_mutex_);
      robot_->drive(request);
    } catch (const Error& e) {
      return reply_error(res, 503, e.what());
    }
    json body{{"accepted", true}, {"direction", robot::direction_name(request.motion)}};
    if (request.steps) body["steps"] = *request.steps;
    reply(res, 202, body);
  });

  srv.Get("/api/pose", [this](const httplib::Request&, httplib::Response& res) {
    std::lock_guard lock(robot_mutex_);
    reply(res, 200, pose_json(robot_->pose()));
  });

  srv.Get("/api/footprint", [this](const httplib::Request& req, httplib::Response& res) {
    std::optional<long long> limit;
    try {
      limit = param_int(req, "limit");
    } catch (const Error& e) {
      return reply_error(res, 400, e.what());
    }
    if (limit && *limit < 1) return reply_error(res, 400, "limit must be >= 1");
    std::vector<nav::TracePoint> points;
    {
      std::lock_guard lock(robot_mutex_);
      const auto& trace = robot_->footprint();
      points = limit ? trace.newest(static_cast<std::size_t>(*limit)) : trace.all();
    }
    json arr = json::array();
    for (const auto& p : points) {
      arr.push_back(json{{"t_us", p.t_us}, {"x_m", p.x_m}, {"y_m", p.y_m},
                         {"heading_deg", p.heading_deg}});
    }
    reply(res, 200, json{{"points", arr}});
  });

  srv.Get(R"(/api/data/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    int channel = 0;
    try {
      std::size_t used = 0;
      const std::string id = req.matches[1];
      channel = std::stoi(id, &used);
      if (used != id.size()) throw std::invalid_argument(id);
    } catch (const std::logic_error&) {
      return reply_error(res, 404, "unknown channel");
    }
    std::optional<fw::ChannelConfig> config;
    {
      std::lock_guard lock(robot_mutex_);
      if (const auto* ch = robot_->channel(channel)) config = *ch;
    }
    if (!config && robot_->store().count(channel) == 0) {
      return reply_error(res, 404, "unknown channel " + std::to_string(channel));
    }

    try {
      const auto from_s = param_double(req, "from");
      const auto to_s = param_double(req, "to");
      if (from_s && to_s && *from_s > *to_s) return reply_error(res, 400, "from > to");
      const auto from_us = from_s ? static_cast<sim::Micros>(std::llround(*from_s * 1e6))
                                  : std::numeric_limits<sim::Micros>::min();
      const auto to_us = to_s ? static_cast<sim::Micros>(std::llround(*to_s * 1e6))
                              : std::numeric_limits<sim::Micros>::max();

      daps::CalibratedSeries series;
      series.channel = channel;
      series.unit = config ? std::string(daps::unit_for(*config)) : "";
      const auto samples = robot_->store().query(channel, from_us, to_us);
      for (const auto& s : samples) series.points.push_back({s.t_us, s.value});

      if (req.has_param("filter")) {
        daps::FilterSpec spec;
        spec.kind = daps::filter_kind_from(req.get_param_value("filter"));
        const auto window = param_int(req, "window").value_or(1);
        if (window < 1) return reply_error(res, 400, "window must be >= 1");
        spec.window = static_cast<std::size_t>(window);
        series = daps::apply_filter(series, spec);
      } else if (req.has_param("window")) {
        return reply_error(res, 400, "window requires filter");
      }

      json body{{"channel", channel}, {"unit", series.unit}};
      if (const auto bucket = param_double(req, "bucket")) {
        if (!(*bucket > 0.0)) return reply_error(res, 400, "bucket must be > 0");
        const auto stat =
            daps::stat_from(req.has_param("stat") ? req.get_param_value("stat") : "mean");
        json rows = json::array();
        for (const auto& row : daps::aggregate(series.points, *bucket, stat)) {
          rows.push_back(json{{"bucket_start_s", row.bucket_start_s}, {"value", row.value}});
        }
        body["bucket_s"] = *bucket;
        body["stat"] = daps::to_string(stat);
        body["rows"] = rows;
      } else {
        if (req.has_param("stat")) return reply_error(res, 400, "stat requires bucket");
        json pts = json::array();
        for (std::size_t i = 0; i < series.points.size(); ++i) {
          pts.push_back(json{{"t_us", series.points[i].t_us},
                             {"value", series.points[i].value},
                             {"raw", samples[i].raw},
                             {"gain", samples[i].gain}});
        }
        body["points"] = pts;
      }
      reply(res, 200, body);
    } catch (const Error& e) {
      reply_error(res, 400, e.what());
    }
  });

  srv.Get("/api/channels", [this](const httplib::Request&, httplib::Response& res) {
    json arr = json::array();
    std::lock_guard lock(robot_mutex_);
    for (const auto& ch : robot_->daq().channels()) arr.push_back(channel_json(ch));
    reply(res, 200, json{{"channels", arr}});
  });

  srv.Get("/api/status", [this](const httplib::Request&, httplib::Response& res) {
    std::lock_guard lock(robot_mutex_);
    const auto& c = robot_->counters();
    reply(res, 200,
          json{{"running", sim_running_.load()},
               {"now_us", robot_->now_us()},
               {"motion", fw::to_string(robot_->control().active())},
               {"feedback_frames", c.feedback_frames},
               {"samples_persisted", c.samples_persisted},
               {"storage_errors", c.storage_errors},
               {"frame_errors", robot_->decoder().errors()},
               {"subscribers", hub_.subscribers()}});
  });

  srv.Get("/api/stream", [this](const httplib::Request&, httplib::Response& res) {
    auto sub = hub_.subscribe();
    res.set_header("Cache-Control", "no-cache");
    res.set_chunked_content_provider(
        "text/event-stream",
        [this, sub](std::size_t, httplib::DataSink& sink) {
          if (auto msg = sub->next(std::chrono::milliseconds(500))) {
            const std::string chunk = "data: " + *msg + "\n\n";
            return sink.write(chunk.data(), chunk.size());
          }
          switch (sub->state()) {
            case TelemetryHub::Subscription::State::kOverflowed: {
              const std::string chunk = std::string("event: close\ndata: {\"code\":\"") +
                                        kBacklogOverflowCode + "\"}\n\n";
              sink.write(chunk.data(), chunk.size());
              sink.done();
              return true;
            }
            case TelemetryHub::Subscription::State::kClosed:
              sink.done();
              return true;
            case TelemetryHub::Subscription::State::kOpen:
              break;
          }
          static constexpr char kKeepAlive[] = ": keepalive\n\n";
          return sink.write(kKeepAlive, sizeof(kKeepAlive) - 1);
        },
        [this, sub](bool) { hub_.unsubscribe(sub); });
  });

  const auto& cockpit = robot_->config().cockpit_dir;
  if (!cockpit.empty() && std::filesystem::is_directory(cockpit)) {
    srv.set_mount_point("/", cockpit.string());
  } else {
    srv.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kIndexHtml, "text/html; charset=utf-8");
    });
  }
}

}  // namespace lwr::service
