#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include "lwr/sim/clock.hpp"

namespace lwr::sim {

// Discrete-time driver. Each tick first fires the one-shot events that have
// come due (timestamp order, ties in registration order), then every tick
// handler in registration order.
//
// Not thread-safe; callers serialize access between steps.
class Kernel {
 public:
  using Handler = std::function<void()>;

  explicit Kernel(Micros tick_us = kDefaultTickUs);

  Kernel(const Kernel&) = delete;
  Kernel& operator=(const Kernel&) = delete;

  SimClock& clock() noexcept { return clock_; }
  const SimClock& clock() const noexcept { return clock_; }
  Micros now_us() const noexcept { return clock_.now_us(); }

  void on_tick(Handler handler);

  // Fires once at the first tick whose time is >= at_us. at_us must be in
  // the future.
  void schedule_at(Micros at_us, Handler handler);

  void step(std::int64_t n = 1);

  std::size_t pending_events() const noexcept { return events_.size(); }

 private:
  struct Event {
    Micros at_us;
    std::uint64_t seq;
    Handler handler;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const noexcept {
      if (a.at_us != b.at_us) return a.at_us > b.at_us;
      return a.seq > b.seq;
    }
  };

  SimClock clock_;
  std::vector<Handler> tick_handlers_;
  std::priority_queue<Event, std::vector<Event>, Later> events_;
  std::uint64_t next_seq_ = 0;
};

}  // namespace lwr::sim
