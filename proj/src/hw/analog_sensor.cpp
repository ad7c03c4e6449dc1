#include "lwr/hw/analog_sensor.hpp"

#include <algorithm>
#include <string>

#include "lwr/error.hpp"

namespace lwr::hw {

std::string_view to_string(SensorKind kind) {
  return kind == SensorKind::kTemperature ? "temperature" : "gas";
}

SensorKind sensor_kind_from(std::string_view name) {
  if (name == "temperature") return SensorKind::kTemperature;
  if (name == "gas") return SensorKind::kGas;
  throw Error(ErrorCode::kConfig, "unknown sensor kind '" + std::string(name) + "'");
}

double SensorTransfer::volts(double quantity, double vref) const {
  switch (kind) {
    case SensorKind::kTemperature:
      return volts_per_c * quantity;
    case SensorKind::kGas:
      if (quantity <= 0.0) return 0.0;
      return vref * quantity / (quantity + half_scale_ppm);
  }
  return 0.0;
}

double AnalogSensor::read(double quantity, double vref, std::mt19937_64& rng) const {
  double v = transfer.volts(quantity, vref);
  if (noise_sd_v > 0.0) {
    std::normal_distribution<double> noise(0.0, noise_sd_v);
    v += noise(rng);
  }
  return std::clamp(v, 0.0, vref);
}

}  // namespace lwr::hw
