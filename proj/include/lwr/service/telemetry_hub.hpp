#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "lwr/robot/robot.hpp"

namespace lwr::service {

nlohmann::json to_json(const robot::TelemetryEvent& event);
nlohmann::json sample_to_json(const fw::Sample& sample);

// Close reason sent to a subscriber that fell more than the backlog behind.
inline constexpr const char* kBacklogOverflowCode = "backlog_overflow";

// Fans telemetry out to stream subscribers. Every subscriber sees the same
// event sequence; one that lets its queue exceed the backlog is cut off.
class TelemetryHub {
 public:
  class Subscription {
   public:
    enum class State { kOpen, kOverflowed, kClosed };

    // Next serialized event, or nullopt on timeout or once closed.
    std::optional<std::string> next(std::chrono::milliseconds timeout);
    State state() const;
    std::size_t queued() const;

   private:
    friend class TelemetryHub;
    mutable std::mutex mutex_;
    std::condition_variable cv_;
    std::deque<std::string> queue_;
    State state_ = State::kOpen;
  };

  explicit TelemetryHub(std::size_t backlog = 1000) : backlog_(backlog) {}

  std::shared_ptr<Subscription> subscribe();
  void unsubscribe(const std::shared_ptr<Subscription>& sub);

  void publish(const robot::TelemetryEvent& event);
  void close_all();

  std::size_t subscribers() const;
  std::uint64_t published() const;
  std::optional<std::string> last_event() const;

 private:
  std::size_t backlog_;
  mutable std::mutex mutex_;
  std::vector<std::shared_ptr<Subscription>> subs_;
  std::optional<std::string> last_;
  std::uint64_t published_ = 0;
};

}  // namespace lwr::service
