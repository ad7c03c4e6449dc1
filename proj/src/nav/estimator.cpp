#include "lwr/nav/estimator.hpp"

#include <cmath>
#include <string>

#include "lwr/error.hpp"

namespace lwr::nav {

PoseEstimator::PoseEstimator(double step_length_m, hw::Pose initial)
    : step_length_m_(step_length_m) {
  if (!(step_length_m > 0.0)) {
    throw Error(ErrorCode::kPrecondition, "step length must be positive");
  }
  est_.pose = initial;
  est_.pose.heading_deg = hw::normalize_heading(initial.heading_deg);
}

const EstimatedPose& PoseEstimator::update(std::int64_t fb_left, std::int64_t fb_right,
                                           double heading_deg, sim::Micros t_us) {
  if (has_update_ && t_us <= est_.updated_us) {
    throw Error(ErrorCode::kStaleFeedback,
                "feedback at " + std::to_string(t_us) + " us is not newer than " +
                    std::to_string(est_.updated_us) + " us");
  }
  const auto dl = fb_left - est_.last_left;
  const auto dr = fb_right - est_.last_right;

  // Heading first, so a turn finished inside this frame is already applied.
  est_.pose.heading_deg = hw::normalize_heading(heading_deg);
  if (dl + dr != 0) {
    const double d = static_cast<double>(dl + dr) / 2.0 * step_length_m_;
    const double theta = hw::deg_to_rad(est_.pose.heading_deg);
    est_.pose.x_m += d * std::sin(theta);
    est_.pose.y_m += d * std::cos(theta);
  }
  est_.last_left = fb_left;
  est_.last_right = fb_right;
  est_.updated_us = t_us;
  has_update_ = true;
  return est_;
}

void PoseEstimator::reset_session() {
  est_.last_left = 0;
  est_.last_right = 0;
  has_update_ = false;
}

}  // namespace lwr::nav
