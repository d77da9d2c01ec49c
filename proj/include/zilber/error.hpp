#pragma once

#include <stdexcept>
#include <string>

namespace zilber {

enum class ErrorCode {
  invalid_argument = 1,  // precondition violated by the caller
  validation = 2,        // input data violates a structural invariant
  parse = 3,             // malformed file or JSON payload
  overflow = 4,          // degree or dimension past a configured bound
  containment = 5,       // an expected integer containment does not hold
  internal = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace zilber
