#include "lwr/sim/serial_link.hpp"

#include "lwr/error.hpp"

namespace lwr::sim {

SerialLink::SerialLink(const SimClock& clock, std::int64_t latency_ticks,
                       BusLog* log)
    : clock_(clock), latency_ticks_(latency_ticks), log_(log) {
  if (latency_ticks < 0) {
    throw Error(ErrorCode::kPrecondition, "serial latency must be >= 0");
  }
}

void SerialLink::send(Direction dir, std::uint8_t byte) {
  auto& q = queue(dir);
  if (q.size() >= kSerialCapacity) {
    throw Error(ErrorCode::kOverflow, "serial queue overflow (4096 bytes unconsumed)");
  }
  q.push_back(InFlight{clock_.ticks() + latency_ticks_, byte});
  if (log_ != nullptr) {
    log_->append(BusRecord{clock_.now_us(), BusId::kSerial,
                           dir == Direction::kHostToMcu ? BusDir::kHostToMcu
                                                        : BusDir::kMcuToHost,
                           byte});
  }
}

std::optional<std::uint8_t> SerialLink::receive(Direction dir) {
  if (!readable(dir)) return std::nullopt;
  auto& q = queue(dir);
  const auto byte = q.front().byte;
  q.pop_front();
  return byte;
}

bool SerialLink::readable(Direction dir) const {
  const auto& q = queue(dir);
  return !q.empty() && q.front().ready_tick <= clock_.ticks();
}

std::size_t SerialLink::pending(Direction dir) const { return queue(dir).size(); }

}  // namespace lwr::sim
