#include "holderlab/error.hpp"

namespace holderlab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_index: return "invalid-index";
    case ErrorCode::not_in_space: return "not-in-space";
    case ErrorCode::domain_violation: return "domain-violation";
    case ErrorCode::invalid_parameter: return "invalid-parameter";
    case ErrorCode::invalid_budget: return "invalid-budget";
    case ErrorCode::insufficient_samples: return "insufficient-samples";
    case ErrorCode::invalid_strategy: return "invalid-strategy";
    case ErrorCode::invalid_check: return "invalid-check";
    case ErrorCode::invalid_composition: return "invalid-composition";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::unknown_name: return "unknown-name";
  }
  return "unknown";
}

}  // namespace holderlab
