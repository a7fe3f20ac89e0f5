#pragma once

#include <stdexcept>
#include <string>

namespace rectstokes {

enum class ErrorCode {
  invalid_argument = 1,
  solver_failure = 2,
  verification_failure = 3,
  element_failure = 4,
};

/// Library-wide exception; carries a coarse code that maps onto the C API
/// status values and the CLI exit codes.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

} // namespace rectstokes
