#include "lwr/service/telemetry_hub.hpp"

#include <algorithm>

namespace lwr::service {

using nlohmann::json;

json sample_to_json(const fw::Sample& s) {
  return json{{"channel", s.channel}, {"t_us", s.t_us}, {"gain", s.gain},
              {"raw", s.raw}, {"value", s.value}};
}

json to_json(const robot::TelemetryEvent& ev) {
  json samples = json::object();
  for (const auto& [ch, s] : ev.latest) samples[std::to_string(ch)] = sample_to_json(s);
  return json{{"kind", ev.kind == robot::EventKind::kFeedback ? "feedback" : "sample"},
              {"t_us", ev.t_us},
              {"pose",
               {{"x_m", ev.pose.x_m}, {"y_m", ev.pose.y_m}, {"heading_deg", ev.pose.heading_deg}}},
              {"samples", samples}};
}

std::optional<std::string> TelemetryHub::Subscription::next(std::chrono::milliseconds timeout) {
  std::unique_lock lock(mutex_);
  cv_.wait_for(lock, timeout, [&] { return !queue_.empty() || state_ != State::kOpen; });
  if (state_ != State::kOpen || queue_.empty()) return std::nullopt;
  auto msg = std::move(queue_.front());
  queue_.pop_front();
  return msg;
}

TelemetryHub::Subscription::State TelemetryHub::Subscription::state() const {
  std::lock_guard lock(mutex_);
  return state_;
}

std::size_t TelemetryHub::Subscription::queued() const {
  std::lock_guard lock(mutex_);
  return queue_.size();
}

std::shared_ptr<TelemetryHub::Subscription> TelemetryHub::subscribe() {
  auto sub = std::make_shared<Subscription>();
  std::lock_guard lock(mutex_);
  subs_.push_back(sub);
  return sub;
}

void TelemetryHub::unsubscribe(const std::shared_ptr<Subscription>& sub) {
  {
    std::lock_guard lock(mutex_);
    std::erase(subs_, sub);
  }
  std::lock_guard sl(sub->mutex_);
  if (sub->state_ == Subscription::State::kOpen) sub->state_ = Subscription::State::kClosed;
  sub->cv_.notify_all();
}

void TelemetryHub::publish(const robot::TelemetryEvent& event) {
  auto text = to_json(event).dump();
  std::lock_guard lock(mutex_);
  ++published_;
  for (auto it = subs_.begin(); it != subs_.end();) {
    auto& sub = **it;
    bool drop = false;
    {
      std::lock_guard sl(sub.mutex_);
      sub.queue_.push_back(text);
      if (sub.queue_.size() > backlog_) {
        sub.queue_.clear();
        sub.state_ = Subscription::State::kOverflowed;
        drop = true;
      }
      sub.cv_.notify_all();
    }
    it = drop ? subs_.erase(it) : it + 1;
  }
  last_ = std::move(text);
}

void TelemetryHub::close_all() {
  std::lock_guard lock(mutex_);
  for (auto& sub : subs_) {
    std::lock_guard sl(sub->mutex_);
    sub->state_ = Subscription::State::kClosed;
    sub->cv_.notify_all();
  }
  subs_.clear();
}

std::size_t TelemetryHub::subscribers() const {
  std::lock_guard lock(mutex_);
  return subs_.size();
}

std::uint64_t TelemetryHub::published() const {
  std::lock_guard lock(mutex_);
  return published_;
}

std::optional<std::string> TelemetryHub::last_event() const {
  std::lock_guard lock(mutex_);
  return last_;
}

}  // namespace lwr::service
