#include "lwr/daps/store.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <mutex>
#include <regex>

#include "lwr/error.hpp"

namespace lwr::daps {

std::string format_sample_record(const fw::Sample& s) {
  return fmt::format("{} {} {} {} {:.6f}", s.t_us, s.channel, s.gain, s.raw, s.value);
}

namespace {

template <typename T>
bool parse_int(std::string_view token, T& out) {
  auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc{} && p == token.data() + token.size();
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    const auto start = i;
    while (i < line.size() && line[i] != ' ') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace

fw::Sample parse_sample_record(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto f = split(line);
  auto fail = [&](const char* why) -> fw::Sample {
    throw Error(ErrorCode::kParse, fmt::format("bad sample record '{}': {}", line, why));
  };
  if (f.size() != 5) return fail("expected 5 fields");
  fw::Sample s;
  unsigned raw = 0;
  if (!parse_int(f[0], s.t_us)) return fail("timestamp");
  if (!parse_int(f[1], s.channel)) return fail("channel");
  if (!parse_int(f[2], s.gain)) return fail("gain");
  if (!parse_int(f[3], raw) || raw > 0xFFFF) return fail("raw");
  s.raw = static_cast<std::uint16_t>(raw);
  try {
    std::size_t used = 0;
    s.value = std::stod(std::string(f[4]), &used);
    if (used != f[4].size()) return fail("value");
  } catch (const std::logic_error&) {
    return fail("value");
  }
  return s;
}

SampleStore::SampleStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  if (!dir_.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) {
      throw Error(ErrorCode::kStorage,
                  fmt::format("cannot create data dir {}: {}", dir_.string(), ec.message()));
    }
    load();
  }
}

std::filesystem::path SampleStore::log_path(const std::filesystem::path& dir, int channel) {
  return dir / fmt::format("ch{}.log", channel);
}

void SampleStore::load() {
  static const std::regex name_re(R"(ch(\d+)\.log)");
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
    if (!entry.is_regular_file()) continue;
    std::smatch m;
    const auto name = entry.path().filename().string();
    if (!std::regex_match(name, m, name_re)) continue;
    const int channel = std::stoi(m[1]);
    auto& vec = samples_[channel];
    std::ifstream in(entry.path());
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        auto s = parse_sample_record(line);
        if (s.channel != channel || (!vec.empty() && s.t_us <= vec.back().t_us)) {
          ++skipped_on_load_;
          continue;
        }
        vec.push_back(s);
      } catch (const Error&) {
        ++skipped_on_load_;
      }
    }
  }
}

void SampleStore::persist(const fw::Sample& sample) {
  std::unique_lock lock(mutex_);
  auto& vec = samples_[sample.channel];
  if (!vec.empty() && sample.t_us <= vec.back().t_us) {
    throw Error(ErrorCode::kNonMonotone,
                fmt::format("channel {} sample at {} us is not newer than {} us",
                            sample.channel, sample.t_us, vec.back().t_us));
  }
  if (!dir_.empty()) {
    auto& file = files_[sample.channel];
    if (!file || !*file) {
      file = std::make_unique<std::ofstream>(log_path(dir_, sample.channel), std::ios::app);
      if (!*file) {
        file.reset();
        throw Error(ErrorCode::kStorage,
                    fmt::format("cannot open {}", log_path(dir_, sample.channel).string()));
      }
    }
    *file << format_sample_record(sample) << '\n';
    file->flush();
    if (!*file) {
      file.reset();
      throw Error(ErrorCode::kStorage, fmt::format("write failed for channel {}", sample.channel));
    }
  }
  vec.push_back(sample);
}

std::vector<fw::Sample> SampleStore::query(int channel, sim::Micros from_us,
                                           sim::Micros to_us) const {
  std::shared_lock lock(mutex_);
  auto it = samples_.find(channel);
  if (it == samples_.end()) return {};
  const auto& vec = it->second;
  auto lo = std::lower_bound(vec.begin(), vec.end(), from_us,
                             [](const fw::Sample& s, sim::Micros t) { return s.t_us < t; });
  auto hi = std::upper_bound(vec.begin(), vec.end(), to_us,
                             [](sim::Micros t, const fw::Sample& s) { return t < s.t_us; });
  if (hi < lo) return {};
  return {lo, hi};
}

std::vector<fw::Sample> SampleStore::all(int channel) const {
  std::shared_lock lock(mutex_);
  auto it = samples_.find(channel);
  if (it == samples_.end()) return {};
  return it->second;
}

std::size_t SampleStore::count(int channel) const {
  std::shared_lock lock(mutex_);
  auto it = samples_.find(channel);
  return it == samples_.end() ? 0 : it->second.size();
}

std::size_t SampleStore::total() const {
  std::shared_lock lock(mutex_);
  std::size_t n = 0;
  for (const auto& [ch, vec] : samples_) n += vec.size();
  return n;
}

}  // namespace lwr::daps
