#include "lwr/cli/replay.hpp"

#include <fmt/format.h>

#include <istream>
#include <map>
#include <sstream>

#include "lwr/daps/frame_decoder.hpp"
#include "lwr/daps/store.hpp"
#include "lwr/error.hpp"
#include "lwr/sim/bus_log.hpp"

namespace lwr::cli {

namespace {

LogKind detect(const std::string& line) {
  std::istringstream ss(line);
  std::string a, b;
  ss >> a >> b;
  if (b == "serial" || b == "parallel" || b == "motor") return LogKind::kBusTraffic;
  return LogKind::kSamples;
}

class BusReplayer {
 public:
  BusReplayer(ReplayReport& report, const hw::Geometry& geometry, const hw::Pose& initial)
      : report_(report), chassis_(geometry, initial) {}

  void feed(int line_no, const sim::BusRecord& r) {
    if (have_last_ && r.now_us < last_us_) {
      report_.violations.push_back(
          fmt::format("line {}: timestamp {} goes backwards (after {})", line_no, r.now_us, last_us_));
    }
    have_last_ = true;
    last_us_ = r.now_us;

    switch (r.bus) {
      case sim::BusId::kMotor:
        ++report_.motor_writes;
        chassis_.stepper_apply(r.byte);
        break;
      case sim::BusId::kParallel: {
        const auto errors_before = decoder_.errors();
        if (decoder_.push(r.byte)) ++report_.frames_ok;
        if (decoder_.errors() != errors_before) {
          report_.violations.push_back(fmt::format(
              "line {}: parallel frame rejected (checksum {}, sync {}, malformed {})", line_no,
              decoder_.checksum_errors(), decoder_.sync_errors(), decoder_.malformed()));
        }
        break;
      }
      case sim::BusId::kSerial:
        if (r.dir == sim::BusDir::kHostToMcu) {
          ++report_.command_bytes;
        } else if (r.byte == '\n') {
          feedback(line_no);
          fb_line_.clear();
        } else {
          fb_line_.push_back(static_cast<char>(r.byte));
        }
        break;
    }
  }

  void finish() { report_.derived_pose = chassis_.true_pose(); }

 private:
  void feedback(int line_no) {
    std::istringstream ss(fb_line_);
    std::string tag;
    long long l = 0, r = 0;
    if (!(ss >> tag >> l >> r) || tag != "FB") {
      report_.violations.push_back(fmt::format("line {}: malformed feedback '{}'", line_no, fb_line_));
      return;
    }
    ++report_.feedback_frames;
    if (l != chassis_.left_steps() || r != chassis_.right_steps()) {
      report_.violations.push_back(fmt::format(
          "line {}: feedback {} {} disagrees with motor traffic {} {}", line_no, l, r,
          chassis_.left_steps(), chassis_.right_steps()));
    }
  }

  ReplayReport& report_;
  hw::Chassis chassis_;
  daps::FrameDecoder decoder_;
  std::string fb_line_;
  bool have_last_ = false;
  sim::Micros last_us_ = 0;
};

void check_sample(ReplayReport& report, int line_no, const fw::Sample& s,
                  std::map<int, sim::Micros>& last) {
  ++report.samples;
  if (auto it = last.find(s.channel); it != last.end() && s.t_us <= it->second) {
    report.violations.push_back(fmt::format("line {}: channel {} timestamp {} not increasing",
                                            line_no, s.channel, s.t_us));
  }
  last[s.channel] = s.t_us;
  const bool compass = s.gain == 0;
  if (!(compass || s.gain == 1 || s.gain == 2 || s.gain == 4 || s.gain == 8)) {
    report.violations.push_back(fmt::format("line {}: invalid gain {}", line_no, s.gain));
  }
  if (s.raw > (compass ? 3599 : 1023)) {
    report.violations.push_back(fmt::format("line {}: raw {} out of range", line_no, s.raw));
  }
}

}  // namespace

ReplayReport replay(std::istream& in, const hw::Geometry& geometry, const hw::Pose& initial) {
  ReplayReport report;
  BusReplayer bus(report, geometry, initial);
  std::map<int, sim::Micros> last_sample;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(' ') == std::string::npos) continue;
    if (report.kind == LogKind::kEmpty) report.kind = detect(line);
    try {
      if (report.kind == LogKind::kBusTraffic) {
        bus.feed(line_no, sim::parse_record(line));
      } else {
        check_sample(report, line_no, daps::parse_sample_record(line), last_sample);
      }
      ++report.records;
    } catch (const Error& e) {
      ++report.corrupt_lines;
      report.problems.push_back(fmt::format("line {}: corrupt record: {}", line_no, e.what()));
    }
  }
  if (report.kind == LogKind::kBusTraffic) bus.finish();
  return report;
}

std::string ReplayReport::text() const {
  std::string out;
  for (const auto& p : problems) out += p + "\n";
  for (const auto& v : violations) out += "violation: " + v + "\n";
  switch (kind) {
    case LogKind::kEmpty:
      out += "empty log\n";
      break;
    case LogKind::kBusTraffic:
      out += fmt::format(
          "bus log: {} records, {} command bytes, {} motor writes, {} feedback frames, {} sample "
          "frames\nderived pose: x {:.6f} m, y {:.6f} m, heading {:.3f} deg\n",
          records, command_bytes, motor_writes, feedback_frames, frames_ok, derived_pose.x_m,
          derived_pose.y_m, derived_pose.heading_deg);
      break;
    case LogKind::kSamples:
      out += fmt::format("sample log: {} samples\n", samples);
      break;
  }
  out += fmt::format("{} invariant violations, {} corrupt lines\n", violations.size(),
                     corrupt_lines);
  return out;
}

}  // namespace lwr::cli
