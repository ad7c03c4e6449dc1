#pragma once

#include <cstddef>
#include <deque>
#include <vector>

#include "lwr/nav/estimator.hpp"

namespace lwr::nav {

struct TracePoint {
  sim::Micros t_us = 0;
  double x_m = 0.0;
  double y_m = 0.0;
  double heading_deg = 0.0;

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

inline constexpr std::size_t kDefaultTraceCapacity = 10'000;

// Bounded pose history; the oldest point is evicted once full.
class FootprintTrace {
 public:
  explicit FootprintTrace(std::size_t capacity = kDefaultTraceCapacity);

  // Throws Error(kNonMonotone) unless est.updated_us is newer than the last
  // recorded point.
  void record(const EstimatedPose& est);

  // Newest `limit` points in chronological order. limit must be >= 1.
  std::vector<TracePoint> newest(std::size_t limit) const;
  std::vector<TracePoint> all() const { return {points_.begin(), points_.end()}; }

  std::size_t size() const noexcept { return points_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  bool empty() const noexcept { return points_.empty(); }

 private:
  std::size_t capacity_;
  std::deque<TracePoint> points_;
};

}  // namespace lwr::nav
