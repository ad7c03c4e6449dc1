#include "lwr/sim/clock.hpp"

#include <string>

#include "lwr/error.hpp"

namespace lwr::sim {

SimClock::SimClock(Micros tick_us) : tick_us_(tick_us) {
  if (tick_us <= 0) {
    throw Error(ErrorCode::kPrecondition, "tick_us must be positive");
  }
}

Micros SimClock::step(std::int64_t n) {
  if (n < 1) {
    throw Error(ErrorCode::kPrecondition,
                "clock step count must be >= 1, got " + std::to_string(n));
  }
  now_us_ += n * tick_us_;
  return now_us_;
}

}  // namespace lwr::sim
