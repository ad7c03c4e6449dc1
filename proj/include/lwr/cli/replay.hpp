#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lwr/hw/chassis.hpp"

namespace lwr::cli {

enum class LogKind { kEmpty, kBusTraffic, kSamples };

struct ReplayReport {
  LogKind kind = LogKind::kEmpty;
  std::size_t records = 0;
  std::size_t corrupt_lines = 0;
  std::vector<std::string> violations;
  std::vector<std::string> problems;  // corrupt lines, with line numbers

  // Bus traffic
  std::size_t frames_ok = 0;
  std::size_t feedback_frames = 0;
  std::size_t command_bytes = 0;
  std::size_t motor_writes = 0;
  hw::Pose derived_pose;

  // Sample log
  std::size_t samples = 0;

  bool ok() const noexcept { return violations.empty() && corrupt_lines == 0; }
  std::string text() const;
};

// Re-derives poses and frames from a bus-traffic log, or re-checks a sample
// log, and verifies checksums, monotone timestamps and feedback/motor
// agreement. Corrupt lines are reported and skipped.
ReplayReport replay(std::istream& in, const hw::Geometry& geometry = {},
                    const hw::Pose& initial = {});

}  // namespace lwr::cli
