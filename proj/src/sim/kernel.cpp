#include "lwr/sim/kernel.hpp"

#include <string>
#include <utility>

#include "lwr/error.hpp"

namespace lwr::sim {

Kernel::Kernel(Micros tick_us) : clock_(tick_us) {}

void Kernel::on_tick(Handler handler) {
  tick_handlers_.push_back(std::move(handler));
}

void Kernel::schedule_at(Micros at_us, Handler handler) {
  if (at_us <= clock_.now_us()) {
    throw Error(ErrorCode::kPrecondition,
                "event time " + std::to_string(at_us) + " is not in the future");
  }
  events_.push(Event{at_us, next_seq_++, std::move(handler)});
}

void Kernel::step(std::int64_t n) {
  if (n < 1) {
    throw Error(ErrorCode::kPrecondition, "kernel step count must be >= 1");
  }
  for (std::int64_t i = 0; i < n; ++i) {
    clock_.step(1);
    const Micros now = clock_.now_us();
    while (!events_.empty() && events_.top().at_us <= now) {
      // Copy out before pop: the handler may schedule new events.
      Handler handler = std::move(const_cast<Event&>(events_.top()).handler);
      events_.pop();
      handler();
    }
    for (auto& handler : tick_handlers_) handler();
  }
}

}  // namespace lwr::sim
