#include "lwr/fw/sample.hpp"

#include <string>

#include "lwr/error.hpp"

namespace lwr::fw {

std::uint8_t gain_code(int gain) {
  switch (gain) {
    case 0: return kCompassGainCode;
    case 1: return 0;
    case 2: return 1;
    case 4: return 2;
    case 8: return 3;
    default:
      throw Error(ErrorCode::kInvalidGain, "no frame code for gain " + std::to_string(gain));
  }
}

std::optional<int> gain_from_code(std::uint8_t code) {
  switch (code) {
    case 0: return 1;
    case 1: return 2;
    case 2: return 4;
    case 3: return 8;
    case kCompassGainCode: return 0;
    default: return std::nullopt;
  }
}

std::uint8_t frame_checksum(const std::uint8_t* bytes5) {
  std::uint8_t chk = 0;
  for (int i = 0; i < 5; ++i) chk ^= bytes5[i];
  return chk;
}

Frame frame_sample(const Sample& sample) {
  if (sample.channel < 0 || sample.channel > 0xFF) {
    throw Error(ErrorCode::kPrecondition, "channel id does not fit a frame byte");
  }
  Frame f{};
  f[0] = kFrameSync;
  f[1] = static_cast<std::uint8_t>(sample.channel);
  f[2] = gain_code(sample.gain);
  f[3] = static_cast<std::uint8_t>(sample.raw >> 8);
  f[4] = static_cast<std::uint8_t>(sample.raw & 0xFF);
  f[5] = frame_checksum(f.data());
  return f;
}

}  // namespace lwr::fw
