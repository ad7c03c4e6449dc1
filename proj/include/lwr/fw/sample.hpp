#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "lwr/sim/clock.hpp"

namespace lwr::fw {

inline constexpr std::uint8_t kFrameSync = 0xA5;
inline constexpr std::uint8_t kCompassGainCode = 0xFF;
inline constexpr std::size_t kFrameSize = 6;

// One acquisition. gain is 0 for compass samples; raw is the 10-bit code
// for analog channels and heading tenths for the compass.
struct Sample {
  int channel = 0;
  sim::Micros t_us = 0;
  int gain = 1;
  std::uint16_t raw = 0;
  double value = 0.0;

  bool is_compass() const noexcept { return gain == 0; }

  friend bool operator==(const Sample&, const Sample&) = default;
};

using Frame = std::array<std::uint8_t, kFrameSize>;

// 1,2,4,8 -> 0..3, compass (gain 0) -> 0xFF.
std::uint8_t gain_code(int gain);
std::optional<int> gain_from_code(std::uint8_t code);

// [0xA5, channel, gain_code, raw_hi, raw_lo, xor of the first five].
Frame frame_sample(const Sample& sample);

std::uint8_t frame_checksum(const std::uint8_t* bytes5);

}  // namespace lwr::fw
