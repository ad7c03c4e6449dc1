#include "lwr/fw/daq_fw.hpp"

#include <cmath>
#include <set>
#include <string>

#include "lwr/error.hpp"
#include "lwr/hw/compass.hpp"

namespace lwr::fw {

std::string_view to_string(ChannelKind kind) {
  return kind == ChannelKind::kAnalog ? "analog" : "compass";
}

void validate_channels(const std::vector<ChannelConfig>& channels) {
  std::set<int> ids;
  for (const auto& ch : channels) {
    const std::string where = "channel " + std::to_string(ch.id);
    if (ch.id < 0 || ch.id > 0xFF) throw Error(ErrorCode::kConfig, where + ": id must be 0..255");
    if (!ids.insert(ch.id).second) throw Error(ErrorCode::kConfig, where + ": duplicate id");
    if (!(ch.interval_s > 0.0)) throw Error(ErrorCode::kConfig, where + ": interval_s must be > 0");
    if (ch.conversion_ticks < 1) {
      throw Error(ErrorCode::kConfig, where + ": conversion_ticks must be >= 1");
    }
    if (ch.kind == ChannelKind::kAnalog && !hw::valid_gain(ch.gain)) {
      throw Error(ErrorCode::kConfig, where + ": gain must be 1, 2, 4 or 8");
    }
  }
}

DaqFirmware::DaqFirmware(const sim::SimClock& clock, sim::ParallelBus& bus,
                         const hw::Chassis& chassis, hw::AdcPga& adc,
                         std::vector<ChannelConfig> channels, QuantitySource quantities,
                         std::uint64_t seed)
    : clock_(clock),
      bus_(bus),
      chassis_(chassis),
      adc_(adc),
      channels_(std::move(channels)),
      quantities_(std::move(quantities)),
      rng_(seed) {
  validate_channels(channels_);
  next_due_.assign(channels_.size(), 0);
  for (const auto& ch : channels_) {
    interval_us_.push_back(static_cast<sim::Micros>(std::llround(ch.interval_s * 1e6)));
  }
}

std::size_t DaqFirmware::index_of(int channel) const {
  for (std::size_t i = 0; i < channels_.size(); ++i) {
    if (channels_[i].id == channel) return i;
  }
  throw Error(ErrorCode::kPrecondition, "unknown channel " + std::to_string(channel));
}

sim::Micros DaqFirmware::next_due_us(int channel) const { return next_due_[index_of(channel)]; }

std::optional<int> DaqFirmware::schedule_next(sim::Micros now) const {
  if (in_flight_) return std::nullopt;
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < channels_.size(); ++i) {
    if (next_due_[i] > now) continue;
    if (!best || next_due_[i] < next_due_[*best] ||
        (next_due_[i] == next_due_[*best] && channels_[i].id < channels_[*best].id)) {
      best = i;
    }
  }
  if (!best) return std::nullopt;
  return channels_[*best].id;
}

void DaqFirmware::acquire(int channel) {
  if (in_flight_) throw Error(ErrorCode::kBusy, "conversion already in flight");
  const auto i = index_of(channel);
  const auto& ch = channels_[i];
  const auto now = clock_.now_us();
  if (ch.kind == ChannelKind::kAnalog) adc_.set_gain(ch.gain, clock_.ticks());
  in_flight_ = InFlight{i, next_due_[i], now, now + ch.conversion_ticks * clock_.tick_us()};
  // Fixed-schedule advancement: due times never absorb start delays.
  next_due_[i] += interval_us_[i];
}

void DaqFirmware::tick() {
  if (in_flight_ && clock_.now_us() >= in_flight_->end_us) complete();
  if (auto next = schedule_next(clock_.now_us())) acquire(*next);
  pump_bus();
}

void DaqFirmware::complete() {
  const auto flight = *in_flight_;
  in_flight_.reset();
  const auto& ch = channels_[flight.index];
  const auto now = clock_.now_us();

  Sample s;
  s.channel = ch.id;
  s.t_us = now;
  if (ch.kind == ChannelKind::kAnalog) {
    const double quantity = quantities_ ? quantities_(ch, now) : ch.default_quantity;
    const double volts = ch.sensor.read(quantity, adc_.vref(), rng_);
    s.gain = adc_.gain();
    s.raw = adc_.convert(volts, clock_.ticks());
  } else {
    s.gain = 0;
    const auto hi = hw::compass_i2c_read(chassis_, 2);
    const auto lo = hw::compass_i2c_read(chassis_, 3);
    s.raw = static_cast<std::uint16_t>((hi << 8) | lo);
  }

  if (keep_conversions_) {
    conversions_.push_back(Conversion{ch.id, flight.due_us, flight.start_us, now});
  }
  ++samples_produced_;
  last_sample_ = s;
  for (auto byte : frame_sample(s)) out_.push_back(byte);
  if (sink_) sink_(s);
}

void DaqFirmware::pump_bus() {
  if (bus_.strobe() && bus_.ack()) bus_.release_strobe();
  if (bus_.idle() && !out_.empty()) {
    bus_.write(out_.front());
    out_.pop_front();
  }
}

}  // namespace lwr::fw
