#pragma once

#include <stdexcept>
#include <string>

namespace geomcp {

// Exit codes used by the CLI: 0 success, 2 input error, 3 configuration
// error, 4 internal invariant violation.
enum class ErrorCode : int {
  input = 2,
  config = 3,
  internal = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct InputError : Error {
  explicit InputError(const std::string& what) : Error(ErrorCode::input, what) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(ErrorCode::config, what) {}
};

struct InternalError : Error {
  explicit InternalError(const std::string& what) : Error(ErrorCode::internal, what) {}
};

}  // namespace geomcp
