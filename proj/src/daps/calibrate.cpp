#include "lwr/daps/calibrate.hpp"

#include "lwr/hw/adc.hpp"

namespace lwr::daps {

double calibrate(const fw::Sample& sample, const fw::ChannelConfig& config, double vref) {
  if (config.kind == fw::ChannelKind::kCompass) return sample.raw / 10.0;

  const int gain = sample.gain > 0 ? sample.gain : config.gain;
  const double v = static_cast<double>(sample.raw) / hw::kAdcMaxCode * vref / gain;
  const auto& t = config.sensor.transfer;
  switch (t.kind) {
    case hw::SensorKind::kTemperature:
      return v / t.volts_per_c;
    case hw::SensorKind::kGas:
      if (v >= vref) return kGasSaturated;
      return t.half_scale_ppm * v / (vref - v);
  }
  return 0.0;
}

std::string_view unit_for(const fw::ChannelConfig& config) {
  if (config.kind == fw::ChannelKind::kCompass) return "deg";
  return config.sensor.transfer.kind == hw::SensorKind::kTemperature ? "°C" : "ppm";
}

}  // namespace lwr::daps
