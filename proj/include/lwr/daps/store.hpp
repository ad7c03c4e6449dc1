#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "lwr/fw/sample.hpp"

namespace lwr::daps {

// "<t_us> <channel> <gain> <raw> <value>" with value at 6 decimals.
std::string format_sample_record(const fw::Sample& sample);
// Throws Error(kParse).
fw::Sample parse_sample_record(std::string_view line);

// Append-only sample log, one file per channel ("ch<id>.log"). Each record
// is flushed before persist() returns. With an empty directory the store
// keeps everything in memory only.
//
// One writer, any number of concurrent readers; readers see a consistent
// prefix of each channel.
class SampleStore {
 public:
  explicit SampleStore(std::filesystem::path dir = {});

  SampleStore(const SampleStore&) = delete;
  SampleStore& operator=(const SampleStore&) = delete;

  // Throws Error(kStorage) if the record cannot be written, and
  // Error(kNonMonotone) if t_us does not increase within the channel.
  void persist(const fw::Sample& sample);

  // Samples with from_us <= t_us <= to_us, in time order.
  std::vector<fw::Sample> query(int channel, sim::Micros from_us, sim::Micros to_us) const;
  std::vector<fw::Sample> all(int channel) const;

  std::size_t count(int channel) const;
  std::size_t total() const;
  std::size_t skipped_on_load() const noexcept { return skipped_on_load_; }
  const std::filesystem::path& dir() const noexcept { return dir_; }

  static std::filesystem::path log_path(const std::filesystem::path& dir, int channel);

 private:
  void load();

  std::filesystem::path dir_;
  mutable std::shared_mutex mutex_;
  std::map<int, std::vector<fw::Sample>> samples_;
  std::map<int, std::unique_ptr<std::ofstream>> files_;
  std::size_t skipped_on_load_ = 0;
};

}  // namespace lwr::daps
