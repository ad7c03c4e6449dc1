#pragma once

#include <cstdint>

namespace lwr::hw {

inline constexpr int kAdcBits = 10;
inline constexpr int kAdcMaxCode = (1 << kAdcBits) - 1;

bool valid_gain(int gain);

// Internal 10-bit ADC behind a programmable-gain amplifier.
//
//   code = clamp(round_half_up(v_in * gain / vref * 1023), 0, 1023)
//
// Changing the gain imposes a one-tick settle before the next conversion.
class AdcPga {
 public:
  explicit AdcPga(double vref_v = 5.0);

  // Throws Error(kInvalidGain) unless gain is 1, 2, 4 or 8.
  void set_gain(int gain, std::int64_t now_tick);
  int gain() const noexcept { return gain_; }
  double vref() const noexcept { return vref_; }

  bool settled(std::int64_t now_tick) const noexcept { return now_tick >= ready_tick_; }

  // Throws Error(kNotReady) while the amplifier is settling.
  std::uint16_t convert(double v_in, std::int64_t now_tick) const;

  static std::uint16_t code_for(double v_in, int gain, double vref_v);

 private:
  double vref_;
  int gain_ = 1;
  std::int64_t ready_tick_ = 0;
};

}  // namespace lwr::hw
