#pragma once

#include <cstdint>

#include "lwr/sim/bus_log.hpp"
#include "lwr/sim/clock.hpp"

namespace lwr::sim {

// 8-bit parallel port with a four-phase strobe/ack handshake:
//   writer: write()          -> data valid, strobe up
//   reader: read()           -> byte latched, ack up
//   writer: release_strobe() -> strobe down
//   reader: release_ack()    -> ack down, bus idle
// Each strobe cycle completes at most one transfer.
class ParallelBus {
 public:
  explicit ParallelBus(const SimClock* clock = nullptr, BusLog* log = nullptr)
      : clock_(clock), log_(log) {}

  // Throws Error(kBusy) if ack is high or a previous byte is still strobed.
  void write(std::uint8_t byte);
  // Throws Error(kNotReady) if strobe is low or this cycle was already read.
  std::uint8_t read();
  // Throws Error(kNotReady) unless ack is high.
  void release_strobe();
  // Throws Error(kNotReady) while strobe is still high.
  void release_ack();

  // Runs all four phases for one byte.
  std::uint8_t transfer(std::uint8_t byte);

  bool strobe() const noexcept { return strobe_; }
  bool ack() const noexcept { return ack_; }
  bool idle() const noexcept { return !strobe_ && !ack_; }
  std::uint64_t transfers() const noexcept { return transfers_; }

 private:
  const SimClock* clock_;
  BusLog* log_;
  std::uint8_t data_ = 0;
  bool strobe_ = false;
  bool ack_ = false;
  std::uint64_t transfers_ = 0;
};

}  // namespace lwr::sim
