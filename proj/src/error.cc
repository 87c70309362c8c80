#include "unit_fibers/error.h"

namespace unit_fibers {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kOutOfRegion: return "out-of-region";
    case ErrorCode::kNotInRegion: return "not-in-region";
    case ErrorCode::kDegeneratePair: return "degenerate-pair";
    case ErrorCode::kUndefinedLinkedness: return "undefined-linkedness";
    case ErrorCode::kDegenerateConfiguration: return "degenerate-configuration";
    case ErrorCode::kUnsupportedFormat: return "unsupported-format";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace unit_fibers
