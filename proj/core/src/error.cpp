#include "dqo/error.hpp"

namespace dqo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::model_validity: return "model_validity";
    case ErrorCode::numerical: return "numerical";
    case ErrorCode::resource: return "resource";
    case ErrorCode::config: return "config";
  }
  return "unknown";
}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace dqo
