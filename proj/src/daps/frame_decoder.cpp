#include "lwr/daps/frame_decoder.hpp"

namespace lwr::daps {

DecodeResult decode_frame(std::span<const std::uint8_t> bytes) {
  DecodeResult r;
  if (bytes.size() < fw::kFrameSize) return r;
  if (bytes[0] != fw::kFrameSync) {
    r.status = FrameStatus::kBadSync;
    return r;
  }
  if (fw::frame_checksum(bytes.data()) != bytes[5]) {
    r.status = FrameStatus::kBadChecksum;
    return r;
  }
  const auto gain = fw::gain_from_code(bytes[2]);
  const auto raw = static_cast<std::uint16_t>((bytes[3] << 8) | bytes[4]);
  if (!gain || raw > (*gain == 0 ? 3599 : 1023)) {
    r.status = FrameStatus::kMalformed;
    return r;
  }
  r.status = FrameStatus::kOk;
  r.sample.channel = bytes[1];
  r.sample.gain = *gain;
  r.sample.raw = raw;
  return r;
}

std::optional<fw::Sample> FrameDecoder::push(std::uint8_t byte) {
  if (buf_.empty()) {
    if (byte != fw::kFrameSync) {
      if (!in_garbage_) ++sync_errors_;
      in_garbage_ = true;
      return std::nullopt;
    }
    in_garbage_ = false;
  }
  buf_.push_back(byte);
  if (buf_.size() < fw::kFrameSize) return std::nullopt;

  const auto result = decode_frame(buf_);
  buf_.clear();
  switch (result.status) {
    case FrameStatus::kOk:
      ++frames_ok_;
      return result.sample;
    case FrameStatus::kBadChecksum:
      ++checksum_errors_;
      break;
    case FrameStatus::kMalformed:
      ++malformed_;
      break;
    case FrameStatus::kBadSync:
    case FrameStatus::kShort:
      break;
  }
  return std::nullopt;
}

}  // namespace lwr::daps
