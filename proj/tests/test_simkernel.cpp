#include <doctest.h>

#include <random>
#include <vector>

#include "lwr/error.hpp"
#include "lwr/sim/bus_log.hpp"
#include "lwr/sim/kernel.hpp"
#include "lwr/sim/parallel_bus.hpp"
#include "lwr/sim/serial_link.hpp"

using namespace lwr;
using namespace lwr::sim;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected lwr::Error");
  return ErrorCode::kParse;
}

}  // namespace

TEST_CASE("clock steps by n ticks") {
  SimClock clock(1000);
  CHECK(clock.step(5) == 5000);
  CHECK(clock.now_us() == 5000);
  CHECK(clock.ticks() == 5);
  CHECK(code_of([&] { clock.step(0); }) == ErrorCode::kPrecondition);
  CHECK(clock.now_us() == 5000);
  CHECK(code_of([] { SimClock bad(0); }) == ErrorCode::kPrecondition);
}

TEST_CASE("kernel fires ties in registration order, before tick handlers") {
  Kernel k(1000);
  std::vector<std::string> order;
  k.schedule_at(3000, [&] { order.push_back("A"); });
  k.schedule_at(3000, [&] { order.push_back("B"); });
  k.schedule_at(2000, [&] { order.push_back("early"); });
  k.on_tick([&] {
    if (k.now_us() == 3000) order.push_back("tick");
  });
  k.step(5);
  CHECK(order == std::vector<std::string>{"early", "A", "B", "tick"});
  CHECK(k.pending_events() == 0);
  CHECK(code_of([&] { k.schedule_at(5000, [] {}); }) == ErrorCode::kPrecondition);
}

TEST_CASE("events scheduled from handlers fire in later ticks") {
  Kernel k(1000);
  int fired = 0;
  k.schedule_at(1000, [&] {
    ++fired;
    k.schedule_at(4000, [&] { ++fired; });
  });
  k.step(3);
  CHECK(fired == 1);
  k.step(1);
  CHECK(fired == 2);
}

TEST_CASE("serial link with zero latency delivers in the same tick, FIFO") {
  SimClock clock;
  BusLog log;
  SerialLink link(clock, 0, &log);
  link.host_send('1');
  link.host_send('2');
  REQUIRE(link.mcu_receive() == std::optional<std::uint8_t>('1'));
  CHECK(link.mcu_receive() == std::optional<std::uint8_t>('2'));
  CHECK_FALSE(link.mcu_receive());
  REQUIRE(log.records().size() == 2);
  CHECK(format_record(log.records()[0]) == "0 serial h2m 31");
}

TEST_CASE("serial latency holds bytes for exactly latency_ticks") {
  SimClock clock;
  SerialLink link(clock, 3);
  link.mcu_send(0x33);
  for (int i = 0; i < 3; ++i) {
    CHECK_FALSE(link.host_receive());
    clock.step();
  }
  CHECK(link.host_receive() == std::optional<std::uint8_t>(0x33));
}

TEST_CASE("serial overflow at 4096 unconsumed bytes") {
  SimClock clock;
  SerialLink link(clock);
  for (std::size_t i = 0; i < kSerialCapacity; ++i) link.host_send(static_cast<std::uint8_t>(i));
  CHECK(code_of([&] { link.host_send(0); }) == ErrorCode::kOverflow);
  // The other direction is independent.
  link.mcu_send(1);
  CHECK(link.pending(SerialLink::Direction::kMcuToHost) == 1);
  CHECK(link.pending(SerialLink::Direction::kHostToMcu) == kSerialCapacity);
}

TEST_CASE("serial property: random scripts arrive complete and in order") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    SimClock clock;
    const int latency = static_cast<int>(rng() % 4);
    SerialLink link(clock, latency);
    std::vector<std::uint8_t> sent, received;
    for (int t = 0; t < 200; ++t) {
      const int burst = static_cast<int>(rng() % 5);
      for (int i = 0; i < burst; ++i) {
        const auto b = static_cast<std::uint8_t>(rng());
        link.host_send(b);
        sent.push_back(b);
      }
      if (rng() % 3 != 0) {
        while (auto b = link.mcu_receive()) received.push_back(*b);
      }
      clock.step();
    }
    for (int i = 0; i <= latency; ++i) {
      while (auto b = link.mcu_receive()) received.push_back(*b);
      clock.step();
    }
    CHECK(received == sent);
  }
}

TEST_CASE("parallel loopback") {
  ParallelBus bus;
  CHECK(bus.transfer(0xA5) == 0xA5);
  CHECK(bus.transfers() == 1);
  CHECK(bus.idle());
}

TEST_CASE("parallel handshake preconditions") {
  ParallelBus bus;
  CHECK(code_of([&] { bus.read(); }) == ErrorCode::kNotReady);
  bus.write(0x10);
  CHECK(code_of([&] { bus.write(0x11); }) == ErrorCode::kBusy);
  CHECK(code_of([&] { bus.release_strobe(); }) == ErrorCode::kNotReady);
  CHECK(bus.read() == 0x10);
  // One strobe cycle, one transfer.
  CHECK(code_of([&] { bus.read(); }) == ErrorCode::kNotReady);
  CHECK(code_of([&] { bus.write(0x12); }) == ErrorCode::kBusy);
  CHECK(code_of([&] { bus.release_ack(); }) == ErrorCode::kNotReady);
  bus.release_strobe();
  CHECK(code_of([&] { bus.write(0x12); }) == ErrorCode::kBusy);  // ack still high
  bus.release_ack();
  CHECK(bus.transfers() == 1);
}

TEST_CASE("six frame bytes through the four-phase handshake") {
  // Hand-enumerated state sequence per byte:
  //   (S0,A0) -write-> (S1,A0) -read-> (S1,A1) -rel strobe-> (S0,A1) -rel ack-> (S0,A0)
  const std::vector<std::uint8_t> frame{0xA5, 0x02, 0x00, 0x03, 0x32, 0x96};
  SimClock clock;
  BusLog log;
  ParallelBus bus(&clock, &log);
  std::vector<std::uint8_t> got;
  for (auto b : frame) {
    CHECK((!bus.strobe() && !bus.ack()));
    bus.write(b);
    CHECK((bus.strobe() && !bus.ack()));
    got.push_back(bus.read());
    CHECK((bus.strobe() && bus.ack()));
    bus.release_strobe();
    CHECK((!bus.strobe() && bus.ack()));
    bus.release_ack();
    clock.step();
  }
  CHECK(got == frame);
  CHECK(bus.transfers() == 6);
  REQUIRE(log.records().size() == 6);
  CHECK(format_record(log.records()[5]) == "5000 parallel m2h 96");
}

TEST_CASE("bus records format and parse") {
  const BusRecord r{123456, BusId::kMotor, BusDir::kOut, 0x21};
  CHECK(format_record(r) == "123456 motor out 21");
  CHECK(parse_record("123456 motor out 21") == r);
  CHECK(code_of([] { parse_record("12 motor out"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse_record("12 wifi out 21"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse_record("12 serial h2m 2G"); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse_record("x serial h2m 21"); }) == ErrorCode::kParse);
}
