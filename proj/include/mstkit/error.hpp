#pragma once

#include <stdexcept>
#include <string>

namespace mstkit {

enum class ErrorCode {
  InvalidArgument = 1,  // malformed input, violated precondition
  Parse = 2,            // unreadable file contents
  Numeric = 3,          // statistic undefined for the input
  Io = 4,               // filesystem failures
  Internal = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace mstkit
