#include <doctest.h>

#include <cmath>
#include <random>

#include "lwr/error.hpp"
#include "lwr/nav/estimator.hpp"
#include "lwr/nav/footprint.hpp"

using namespace lwr;
using namespace lwr::nav;

TEST_CASE("straight segment at heading 0") {
  PoseEstimator est(0.001);
  const auto& p = est.update(200, 200, 0.0, 100'000);
  CHECK(std::abs(p.pose.x_m) < 1e-15);
  CHECK(std::abs(p.pose.y_m - 0.200) < 1e-12);
  CHECK(p.pose.heading_deg == 0.0);
  CHECK(p.last_left == 200);
  CHECK(p.updated_us == 100'000);
}

TEST_CASE("counter-rotating deltas are pure rotation") {
  PoseEstimator est(0.001, hw::Pose{0.3, -0.2, 0.0});
  const auto& p = est.update(100, -100, 90.0, 1);
  CHECK(p.pose.x_m == 0.3);
  CHECK(p.pose.y_m == -0.2);
  CHECK(p.pose.heading_deg == 90.0);
}

TEST_CASE("oblique segment matches independent trig") {
  PoseEstimator est(0.0005, hw::Pose{1.0, 1.0, 0.0});
  const auto& p = est.update(1000, 1000, 30.0, 1);
  // d = 0.5 m; x = 1 + 0.5 sin 30 = 1.25, y = 1 + 0.5 cos 30 = 1.4330127...
  CHECK(p.pose.x_m == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(p.pose.y_m == doctest::Approx(1.0 + 0.25 * std::sqrt(3.0)).epsilon(1e-12));
  CHECK(p.pose.y_m == doctest::Approx(1.4330127).epsilon(1e-7));
}

TEST_CASE("new heading is applied before integrating") {
  PoseEstimator est(0.001);
  est.update(0, 0, 0.0, 1);
  const auto& p = est.update(100, 100, 90.0, 2);
  CHECK(p.pose.x_m == doctest::Approx(0.1));
  CHECK(std::abs(p.pose.y_m) < 1e-15);
}

TEST_CASE("stale feedback is rejected until the session is reset") {
  PoseEstimator est(0.001);
  est.update(10, 10, 0.0, 100);
  try {
    est.update(20, 20, 0.0, 100);
    FAIL("stale frame accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kStaleFeedback);
  }
  CHECK(est.current().last_left == 10);
  est.reset_session();
  const auto& p = est.update(5, 5, 0.0, 50);
  CHECK(p.pose.y_m == doctest::Approx(0.015));
}

TEST_CASE("property: rotation feedback never moves the position") {
  std::mt19937 rng(3);
  PoseEstimator est(0.001, hw::Pose{2.0, 3.0, 0.0});
  std::int64_t l = 0, r = 0;
  for (int i = 1; i <= 500; ++i) {
    const int d = static_cast<int>(rng() % 41) - 20;
    l += d;
    r -= d;
    const auto& p = est.update(l, r, (rng() % 3600) / 10.0, i);
    CHECK(p.pose.x_m == 2.0);
    CHECK(p.pose.y_m == 3.0);
  }
}

TEST_CASE("footprint records in time order") {
  FootprintTrace trace;
  CHECK(trace.empty());
  EstimatedPose e;
  e.updated_us = 10;
  trace.record(e);
  CHECK(trace.size() == 1);
  try {
    trace.record(e);
    FAIL("duplicate timestamp accepted");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kNonMonotone);
  }
  CHECK(trace.size() == 1);
}

TEST_CASE("footprint ring evicts the oldest point") {
  FootprintTrace trace(3);
  for (int i = 1; i <= 4; ++i) {
    EstimatedPose e;
    e.updated_us = i;
    e.pose.x_m = i;
    trace.record(e);
  }
  CHECK(trace.size() == 3);
  const auto all = trace.all();
  CHECK(all.front().t_us == 2);
  CHECK(all.back().t_us == 4);
  CHECK(trace.newest(1).front().t_us == 4);
  CHECK(trace.newest(100).size() == 3);
  CHECK(trace.newest(2).front().t_us == 3);
  CHECK_THROWS_AS(trace.newest(0), Error);
  CHECK_THROWS_AS(FootprintTrace(0), Error);
}
