#include "lwr/nav/footprint.hpp"

#include <algorithm>
#include <string>

#include "lwr/error.hpp"

namespace lwr::nav {

FootprintTrace::FootprintTrace(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw Error(ErrorCode::kPrecondition, "trace capacity must be >= 1");
}

void FootprintTrace::record(const EstimatedPose& est) {
  if (!points_.empty() && est.updated_us <= points_.back().t_us) {
    throw Error(ErrorCode::kNonMonotone,
                "footprint timestamp " + std::to_string(est.updated_us) + " is not increasing");
  }
  points_.push_back(TracePoint{est.updated_us, est.pose.x_m, est.pose.y_m, est.pose.heading_deg});
  if (points_.size() > capacity_) points_.pop_front();
}

std::vector<TracePoint> FootprintTrace::newest(std::size_t limit) const {
  if (limit == 0) throw Error(ErrorCode::kPrecondition, "footprint limit must be >= 1");
  const auto n = std::min(limit, points_.size());
  return {points_.end() - static_cast<std::ptrdiff_t>(n), points_.end()};
}

}  // namespace lwr::nav
