#pragma once

#include <cstdint>

#include "lwr/hw/pose.hpp"
#include "lwr/sim/clock.hpp"

namespace lwr::nav {

struct EstimatedPose {
  hw::Pose pose;
  std::int64_t last_left = 0;
  std::int64_t last_right = 0;
  sim::Micros updated_us = 0;
};

// Dead reckoning from cumulative wheel-step feedback plus an absolute
// compass heading. Heading is always the latest compass reading; distance is
// the mean wheel travel, applied along that heading.
//
// Valid while the drive never translates and rotates inside one feedback
// frame, which the control firmware guarantees for sequential moves.
class PoseEstimator {
 public:
  explicit PoseEstimator(double step_length_m, hw::Pose initial = {});

  // Throws Error(kStaleFeedback) if t_us does not advance past the last
  // update within the current session.
  const EstimatedPose& update(std::int64_t fb_left, std::int64_t fb_right,
                              double heading_deg, sim::Micros t_us);

  // New firmware session: counters restart from zero, pose is kept.
  void reset_session();

  const EstimatedPose& current() const noexcept { return est_; }
  double step_length_m() const noexcept { return step_length_m_; }

 private:
  double step_length_m_;
  EstimatedPose est_;
  bool has_update_ = false;
};

}  // namespace lwr::nav
