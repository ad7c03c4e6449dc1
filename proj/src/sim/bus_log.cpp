#include "lwr/sim/bus_log.hpp"

#include <fmt/format.h>

#include <charconv>
#include <ostream>

#include "lwr/error.hpp"

namespace lwr::sim {

std::string_view to_string(BusId id) {
  switch (id) {
    case BusId::kSerial: return "serial";
    case BusId::kParallel: return "parallel";
    case BusId::kMotor: return "motor";
  }
  return "?";
}

std::string_view to_string(BusDir dir) {
  switch (dir) {
    case BusDir::kHostToMcu: return "h2m";
    case BusDir::kMcuToHost: return "m2h";
    case BusDir::kOut: return "out";
  }
  return "?";
}

std::string format_record(const BusRecord& r) {
  return fmt::format("{} {} {} {:02X}", r.now_us, to_string(r.bus),
                     to_string(r.dir), r.byte);
}

namespace {

std::string_view next_token(std::string_view& rest) {
  while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  const auto end = rest.find(' ');
  auto token = rest.substr(0, end);
  rest.remove_prefix(end == std::string_view::npos ? rest.size() : end);
  return token;
}

[[noreturn]] void bad_line(std::string_view line, const char* why) {
  throw Error(ErrorCode::kParse,
              fmt::format("bad bus record '{}': {}", line, why));
}

}  // namespace

BusRecord parse_record(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::string_view rest = line;
  const auto t = next_token(rest);
  const auto bus = next_token(rest);
  const auto dir = next_token(rest);
  const auto hex = next_token(rest);
  if (hex.empty() || !next_token(rest).empty()) bad_line(line, "expected 4 fields");

  BusRecord r;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), r.now_us);
  if (ec != std::errc{} || p != t.data() + t.size()) bad_line(line, "timestamp");

  if (bus == "serial") r.bus = BusId::kSerial;
  else if (bus == "parallel") r.bus = BusId::kParallel;
  else if (bus == "motor") r.bus = BusId::kMotor;
  else bad_line(line, "bus id");

  if (dir == "h2m") r.dir = BusDir::kHostToMcu;
  else if (dir == "m2h") r.dir = BusDir::kMcuToHost;
  else if (dir == "out") r.dir = BusDir::kOut;
  else bad_line(line, "direction");

  unsigned value = 0;
  auto [q, ec2] = std::from_chars(hex.data(), hex.data() + hex.size(), value, 16);
  if (ec2 != std::errc{} || q != hex.data() + hex.size() || hex.size() != 2) {
    bad_line(line, "hex byte");
  }
  r.byte = static_cast<std::uint8_t>(value);
  return r;
}

void BusLog::append(const BusRecord& record) {
  if (retain_) records_.push_back(record);
  if (mirror_ != nullptr) *mirror_ << format_record(record) << '\n';
}

std::string BusLog::text() const {
  std::string out;
  for (const auto& r : records_) {
    out += format_record(r);
    out += '\n';
  }
  return out;
}

}  // namespace lwr::sim
