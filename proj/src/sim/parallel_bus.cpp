#include "lwr/sim/parallel_bus.hpp"

#include "lwr/error.hpp"

namespace lwr::sim {

void ParallelBus::write(std::uint8_t byte) {
  if (ack_) throw Error(ErrorCode::kBusy, "parallel write while ack high");
  if (strobe_) throw Error(ErrorCode::kBusy, "parallel write while previous byte strobed");
  data_ = byte;
  strobe_ = true;
}

std::uint8_t ParallelBus::read() {
  if (!strobe_) throw Error(ErrorCode::kNotReady, "parallel read with strobe low");
  if (ack_) throw Error(ErrorCode::kNotReady, "strobe cycle already acknowledged");
  ack_ = true;
  ++transfers_;
  if (log_ != nullptr) {
    log_->append(BusRecord{clock_ != nullptr ? clock_->now_us() : 0,
                           BusId::kParallel, BusDir::kMcuToHost, data_});
  }
  return data_;
}

void ParallelBus::release_strobe() {
  if (!ack_) throw Error(ErrorCode::kNotReady, "strobe release before ack");
  strobe_ = false;
}

void ParallelBus::release_ack() {
  if (strobe_) throw Error(ErrorCode::kNotReady, "ack release while strobe high");
  ack_ = false;
}

std::uint8_t ParallelBus::transfer(std::uint8_t byte) {
  write(byte);
  const auto got = read();
  release_strobe();
  release_ack();
  return got;
}

}  // namespace lwr::sim
