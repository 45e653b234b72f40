#pragma once

#include <stdexcept>
#include <string>

namespace afpsrc {

enum class ErrorCode {
  InvalidArgument,
  Parse,
  Encoding,
  Io,
  Format,
  Version,
  Numeric,
};

/// Base exception for everything thrown by the core library. The C API maps
/// the code onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace afpsrc
