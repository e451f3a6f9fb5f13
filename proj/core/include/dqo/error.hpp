#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dqo {

enum class ErrorCode {
  domain,          // argument outside the mathematical domain
  precondition,    // numerical-method precondition (step size, window, ...)
  model_validity,  // physical model used outside its regime
  numerical,       // quadrature / diagonalization failure
  resource,        // problem too large for the chosen method
  config,          // malformed configuration or input file
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace dqo
