#pragma once

#include <stdexcept>
#include <string>

namespace robosym {

enum class ErrorCode {
  invalid_argument,
  inconsistent_generators,
  inconsistent_action,
  unsupported_group,
  decomposition_failure,
  missing_branch_spec,
  invalid_permutation,
  missing_metadata,
  precondition_violation,
  equivariance_violation,
  schema_error,
  parse_error,
  corrupt_record,
  undefined_com,
  io_error,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace robosym
