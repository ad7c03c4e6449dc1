#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lwr/fw/sample.hpp"

namespace lwr::daps {

enum class FrameStatus { kOk, kBadSync, kBadChecksum, kMalformed, kShort };

struct DecodeResult {
  FrameStatus status = FrameStatus::kShort;
  fw::Sample sample;
};

// Decodes one 6-byte frame. Malformed means the checksum passed but a field
// is out of range (unknown gain code, raw beyond the channel kind's range).
DecodeResult decode_frame(std::span<const std::uint8_t> bytes);

// Byte-stream decoder for the parallel link. Scans forward to the next sync
// byte; a frame failing its checksum is dropped whole.
class FrameDecoder {
 public:
  std::optional<fw::Sample> push(std::uint8_t byte);

  std::uint64_t frames_ok() const noexcept { return frames_ok_; }
  std::uint64_t checksum_errors() const noexcept { return checksum_errors_; }
  std::uint64_t sync_errors() const noexcept { return sync_errors_; }
  std::uint64_t malformed() const noexcept { return malformed_; }
  std::uint64_t errors() const noexcept { return checksum_errors_ + sync_errors_ + malformed_; }

 private:
  std::vector<std::uint8_t> buf_;
  bool in_garbage_ = false;
  std::uint64_t frames_ok_ = 0;
  std::uint64_t checksum_errors_ = 0;
  std::uint64_t sync_errors_ = 0;
  std::uint64_t malformed_ = 0;
};

}  // namespace lwr::daps
