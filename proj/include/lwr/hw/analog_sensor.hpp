#pragma once

#include <random>
#include <string_view>

namespace lwr::hw {

enum class SensorKind { kTemperature, kGas };

std::string_view to_string(SensorKind kind);
SensorKind sensor_kind_from(std::string_view name);

// Transfer from physical quantity to sensor output volts.
//   temperature: v = volts_per_c * T
//   gas:         v = vref * c / (c + half_scale_ppm)
struct SensorTransfer {
  SensorKind kind = SensorKind::kTemperature;
  double volts_per_c = 0.01;
  double half_scale_ppm = 200.0;

  double volts(double quantity, double vref) const;
};

struct AnalogSensor {
  SensorTransfer transfer;
  double noise_sd_v = 0.0;

  // Output voltage clamped to [0, vref], noise added before clamping.
  double read(double quantity, double vref, std::mt19937_64& rng) const;
};

}  // namespace lwr::hw
