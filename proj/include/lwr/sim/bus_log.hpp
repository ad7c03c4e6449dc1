#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "lwr/sim/clock.hpp"

namespace lwr::sim {

enum class BusId : std::uint8_t { kSerial, kParallel, kMotor };

// Transfer direction as seen from the host PC.
enum class BusDir : std::uint8_t { kHostToMcu, kMcuToHost, kOut };

std::string_view to_string(BusId id);
std::string_view to_string(BusDir dir);

struct BusRecord {
  Micros now_us = 0;
  BusId bus = BusId::kSerial;
  BusDir dir = BusDir::kHostToMcu;
  std::uint8_t byte = 0;

  friend bool operator==(const BusRecord&, const BusRecord&) = default;
};

// "<now_us> <bus-id> <dir> <hex-byte>", no trailing newline.
std::string format_record(const BusRecord& record);

// Parses one line written by format_record. Throws Error(kParse) on garbage.
BusRecord parse_record(std::string_view line);

// Append-only traffic log. Keeps records in memory and optionally mirrors
// each line to a stream as it is appended.
class BusLog {
 public:
  BusLog() = default;
  explicit BusLog(std::ostream* mirror) : mirror_(mirror) {}

  void append(const BusRecord& record);

  const std::vector<BusRecord>& records() const noexcept { return records_; }
  std::string text() const;
  void clear() noexcept { records_.clear(); }

  // Disables in-memory retention; only the mirror sees traffic. Long
  // headless runs use this to keep memory flat.
  void set_retain(bool retain) noexcept { retain_ = retain; }

 private:
  std::vector<BusRecord> records_;
  std::ostream* mirror_ = nullptr;
  bool retain_ = true;
};

}  // namespace lwr::sim
