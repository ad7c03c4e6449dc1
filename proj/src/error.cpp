#include "lwr/error.hpp"

namespace lwr {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kOverflow: return "overflow";
    case ErrorCode::kBusy: return "busy";
    case ErrorCode::kNotReady: return "not-ready";
    case ErrorCode::kInvalidRegister: return "invalid-register";
    case ErrorCode::kInvalidGain: return "invalid-gain";
    case ErrorCode::kStaleFeedback: return "stale-feedback";
    case ErrorCode::kNonMonotone: return "non-monotone";
    case ErrorCode::kStorage: return "storage";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kParse: return "parse";
  }
  return "unknown";
}

}  // namespace lwr
