#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lwr/sim/clock.hpp"

namespace lwr::daps {

struct SeriesPoint {
  sim::Micros t_us = 0;
  double value = 0.0;

  friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

struct CalibratedSeries {
  int channel = 0;
  std::string unit;
  std::vector<SeriesPoint> points;
};

enum class FilterKind { kMovingAverage, kMedian };

struct FilterSpec {
  FilterKind kind = FilterKind::kMovingAverage;
  std::size_t window = 1;
};

FilterKind filter_kind_from(std::string_view name);

// Causal filter over the last min(i + 1, window) values, so the output has
// the same length as the input. Window 1 is the identity.
std::vector<double> apply_filter(std::span<const double> values, const FilterSpec& spec);
CalibratedSeries apply_filter(const CalibratedSeries& series, const FilterSpec& spec);

enum class Stat { kMin, kMax, kMean, kCount };

Stat stat_from(std::string_view name);
std::string_view to_string(Stat stat);

struct AggregateRow {
  double bucket_start_s = 0.0;
  double value = 0.0;

  friend bool operator==(const AggregateRow&, const AggregateRow&) = default;
};

// Buckets of bucket_s seconds aligned to t = 0; empty buckets are omitted.
// Throws Error(kPrecondition) unless bucket_s > 0.
std::vector<AggregateRow> aggregate(std::span<const SeriesPoint> points, double bucket_s,
                                    Stat stat);

}  // namespace lwr::daps
