#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "lwr/fw/sample.hpp"
#include "lwr/hw/adc.hpp"
#include "lwr/hw/analog_sensor.hpp"
#include "lwr/hw/chassis.hpp"
#include "lwr/sim/clock.hpp"
#include "lwr/sim/parallel_bus.hpp"

namespace lwr::fw {

enum class ChannelKind { kAnalog, kCompass };

std::string_view to_string(ChannelKind kind);

struct ChannelConfig {
  int id = 0;
  ChannelKind kind = ChannelKind::kAnalog;
  int gain = 1;  // ignored for compass channels
  double interval_s = 60.0;
  std::int64_t conversion_ticks = 100;
  hw::AnalogSensor sensor;
  // Physical quantity when no script drives this channel.
  double default_quantity = 0.0;
};

// Checks ids unique, interval > 0, gains valid. Throws Error(kConfig).
void validate_channels(const std::vector<ChannelConfig>& channels);

struct Conversion {
  int channel;
  sim::Micros due_us;
  sim::Micros start_us;
  sim::Micros end_us;
};

// Emulated data-acquisition microcontroller. Strictly one conversion at a
// time; channels are picked by earliest due time, then lowest id. Finished
// samples are framed and clocked out over the parallel bus one byte per
// handshake.
class DaqFirmware {
 public:
  // Physical quantity seen by an analog channel at a given time.
  using QuantitySource = std::function<double(const ChannelConfig&, sim::Micros)>;
  using SampleSink = std::function<void(const Sample&)>;

  DaqFirmware(const sim::SimClock& clock, sim::ParallelBus& bus,
              const hw::Chassis& chassis, hw::AdcPga& adc,
              std::vector<ChannelConfig> channels, QuantitySource quantities,
              std::uint64_t seed = 0);

  void tick();

  std::optional<int> schedule_next(sim::Micros now) const;

  // Starts a conversion on the channel. Throws Error(kBusy) if one is in
  // flight, Error(kPrecondition) for an unknown channel.
  void acquire(int channel);

  bool busy() const noexcept { return in_flight_.has_value(); }

  void set_sample_sink(SampleSink sink) { sink_ = std::move(sink); }
  void set_keep_conversions(bool keep) noexcept { keep_conversions_ = keep; }

  const std::vector<ChannelConfig>& channels() const noexcept { return channels_; }
  const std::vector<Conversion>& conversions() const noexcept { return conversions_; }
  std::optional<Sample> last_sample() const { return last_sample_; }
  std::uint64_t samples_produced() const noexcept { return samples_produced_; }
  std::size_t queued_bytes() const noexcept { return out_.size(); }
  sim::Micros next_due_us(int channel) const;

 private:
  struct InFlight {
    std::size_t index;
    sim::Micros due_us;
    sim::Micros start_us;
    sim::Micros end_us;
  };

  std::size_t index_of(int channel) const;
  void complete();
  void pump_bus();

  const sim::SimClock& clock_;
  sim::ParallelBus& bus_;
  const hw::Chassis& chassis_;
  hw::AdcPga& adc_;
  std::vector<ChannelConfig> channels_;
  std::vector<sim::Micros> next_due_;
  std::vector<sim::Micros> interval_us_;
  QuantitySource quantities_;
  std::mt19937_64 rng_;

  std::optional<InFlight> in_flight_;
  std::deque<std::uint8_t> out_;
  SampleSink sink_;
  std::optional<Sample> last_sample_;
  std::vector<Conversion> conversions_;
  bool keep_conversions_ = true;
  std::uint64_t samples_produced_ = 0;
};

}  // namespace lwr::fw
