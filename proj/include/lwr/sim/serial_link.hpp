#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>

#include "lwr/sim/bus_log.hpp"
#include "lwr/sim/clock.hpp"

namespace lwr::sim {

inline constexpr std::size_t kSerialCapacity = 4096;

// Full-duplex point-to-point byte link: one FIFO per direction, each byte
// delivered exactly once after latency_ticks clock ticks.
class SerialLink {
 public:
  enum class Direction { kHostToMcu, kMcuToHost };

  SerialLink(const SimClock& clock, std::int64_t latency_ticks = 0,
             BusLog* log = nullptr);

  // Throws Error(kOverflow) when capacity unconsumed bytes are already queued
  // in that direction.
  void send(Direction dir, std::uint8_t byte);

  std::optional<std::uint8_t> receive(Direction dir);
  bool readable(Direction dir) const;
  std::size_t pending(Direction dir) const;

  void host_send(std::uint8_t byte) { send(Direction::kHostToMcu, byte); }
  void mcu_send(std::uint8_t byte) { send(Direction::kMcuToHost, byte); }
  std::optional<std::uint8_t> mcu_receive() { return receive(Direction::kHostToMcu); }
  std::optional<std::uint8_t> host_receive() { return receive(Direction::kMcuToHost); }

  std::int64_t latency_ticks() const noexcept { return latency_ticks_; }

 private:
  struct InFlight {
    std::int64_t ready_tick;
    std::uint8_t byte;
  };

  std::deque<InFlight>& queue(Direction dir) {
    return dir == Direction::kHostToMcu ? to_mcu_ : to_host_;
  }
  const std::deque<InFlight>& queue(Direction dir) const {
    return dir == Direction::kHostToMcu ? to_mcu_ : to_host_;
  }

  const SimClock& clock_;
  std::int64_t latency_ticks_;
  BusLog* log_;
  std::deque<InFlight> to_mcu_;
  std::deque<InFlight> to_host_;
};

}  // namespace lwr::sim
