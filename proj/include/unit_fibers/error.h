#ifndef UNIT_FIBERS_ERROR_H_
#define UNIT_FIBERS_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace unit_fibers {

enum class ErrorCode {
  kInvalidArgument,
  kOutOfRegion,
  kNotInRegion,
  kDegeneratePair,
  kUndefinedLinkedness,
  kDegenerateConfiguration,
  kUnsupportedFormat,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception. The code is the
// stable, machine-readable part; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace unit_fibers

#endif  // UNIT_FIBERS_ERROR_H_
