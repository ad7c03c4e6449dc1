#pragma once

#include <cstdint>

namespace lwr::sim {

using Micros = std::int64_t;

inline constexpr Micros kDefaultTickUs = 1000;

// Simulated time. Only moves forward, and only through step().
class SimClock {
 public:
  explicit SimClock(Micros tick_us = kDefaultTickUs);

  Micros now_us() const noexcept { return now_us_; }
  Micros tick_us() const noexcept { return tick_us_; }
  std::int64_t ticks() const noexcept { return now_us_ / tick_us_; }

  // Advances by n * tick_us. n must be >= 1.
  Micros step(std::int64_t n = 1);

 private:
  Micros now_us_ = 0;
  Micros tick_us_;
};

}  // namespace lwr::sim
