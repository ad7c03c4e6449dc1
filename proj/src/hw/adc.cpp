#include "lwr/hw/adc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lwr/error.hpp"

namespace lwr::hw {

bool valid_gain(int gain) { return gain == 1 || gain == 2 || gain == 4 || gain == 8; }

AdcPga::AdcPga(double vref_v) : vref_(vref_v) {
  if (!(vref_v > 0.0)) throw Error(ErrorCode::kPrecondition, "vref must be positive");
}

void AdcPga::set_gain(int gain, std::int64_t now_tick) {
  if (!valid_gain(gain)) {
    throw Error(ErrorCode::kInvalidGain, "unsupported PGA gain " + std::to_string(gain));
  }
  gain_ = gain;
  ready_tick_ = now_tick + 1;
}

std::uint16_t AdcPga::convert(double v_in, std::int64_t now_tick) const {
  if (!settled(now_tick)) throw Error(ErrorCode::kNotReady, "PGA still settling");
  return code_for(v_in, gain_, vref_);
}

std::uint16_t AdcPga::code_for(double v_in, int gain, double vref_v) {
  const double ideal = v_in * gain / vref_v * kAdcMaxCode;
  const double rounded = std::floor(ideal + 0.5);
  return static_cast<std::uint16_t>(std::clamp(rounded, 0.0, double{kAdcMaxCode}));
}

}  // namespace lwr::hw
