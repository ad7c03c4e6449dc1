#include "lwr/daps/series.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lwr/error.hpp"

namespace lwr::daps {

FilterKind filter_kind_from(std::string_view name) {
  if (name == "moving_average") return FilterKind::kMovingAverage;
  if (name == "median") return FilterKind::kMedian;
  throw Error(ErrorCode::kParse, "unknown filter '" + std::string(name) + "'");
}

std::vector<double> apply_filter(std::span<const double> values, const FilterSpec& spec) {
  if (spec.window == 0) throw Error(ErrorCode::kPrecondition, "filter window must be >= 1");
  std::vector<double> out(values.size());
  if (spec.kind == FilterKind::kMovingAverage) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto n = std::min(i + 1, spec.window);
      double sum = 0.0;
      for (std::size_t k = i + 1 - n; k <= i; ++k) sum += values[k];
      out[i] = sum / static_cast<double>(n);
    }
    return out;
  }

  std::vector<double> window;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto n = std::min(i + 1, spec.window);
    window.assign(values.begin() + static_cast<std::ptrdiff_t>(i + 1 - n),
                  values.begin() + static_cast<std::ptrdiff_t>(i + 1));
    std::sort(window.begin(), window.end());
    out[i] = n % 2 == 1 ? window[n / 2] : (window[n / 2 - 1] + window[n / 2]) / 2.0;
  }
  return out;
}

CalibratedSeries apply_filter(const CalibratedSeries& series, const FilterSpec& spec) {
  std::vector<double> values;
  values.reserve(series.points.size());
  for (const auto& p : series.points) values.push_back(p.value);
  const auto filtered = apply_filter(values, spec);
  CalibratedSeries out = series;
  for (std::size_t i = 0; i < out.points.size(); ++i) out.points[i].value = filtered[i];
  return out;
}

Stat stat_from(std::string_view name) {
  if (name == "min") return Stat::kMin;
  if (name == "max") return Stat::kMax;
  if (name == "mean") return Stat::kMean;
  if (name == "count") return Stat::kCount;
  throw Error(ErrorCode::kParse, "unknown stat '" + std::string(name) + "'");
}

std::string_view to_string(Stat stat) {
  switch (stat) {
    case Stat::kMin: return "min";
    case Stat::kMax: return "max";
    case Stat::kMean: return "mean";
    case Stat::kCount: return "count";
  }
  return "?";
}

std::vector<AggregateRow> aggregate(std::span<const SeriesPoint> points, double bucket_s,
                                    Stat stat) {
  if (!(bucket_s > 0.0)) throw Error(ErrorCode::kPrecondition, "bucket_s must be > 0");
  struct Acc {
    double min = 0.0, max = 0.0, sum = 0.0;
    std::size_t n = 0;
  };
  const double bucket_us = bucket_s * 1e6;
  std::map<long long, Acc> buckets;
  for (const auto& p : points) {
    const auto key = static_cast<long long>(std::floor(static_cast<double>(p.t_us) / bucket_us));
    auto& a = buckets[key];
    if (a.n == 0) a.min = a.max = p.value;
    a.min = std::min(a.min, p.value);
    a.max = std::max(a.max, p.value);
    a.sum += p.value;
    ++a.n;
  }
  std::vector<AggregateRow> rows;
  rows.reserve(buckets.size());
  for (const auto& [key, a] : buckets) {
    double v = 0.0;
    switch (stat) {
      case Stat::kMin: v = a.min; break;
      case Stat::kMax: v = a.max; break;
      case Stat::kMean: v = a.sum / static_cast<double>(a.n); break;
      case Stat::kCount: v = static_cast<double>(a.n); break;
    }
    rows.push_back(AggregateRow{static_cast<double>(key) * bucket_s, v});
  }
  return rows;
}

}  // namespace lwr::daps
