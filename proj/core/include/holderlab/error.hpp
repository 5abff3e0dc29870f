#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace holderlab {

enum class ErrorCode {
  invalid_index,
  not_in_space,
  domain_violation,
  invalid_parameter,
  invalid_budget,
  insufficient_samples,
  invalid_strategy,
  invalid_check,
  invalid_composition,
  parse_error,
  unknown_name,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// driver can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace holderlab
