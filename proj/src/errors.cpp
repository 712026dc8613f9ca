#include "fgt/errors.hpp"

namespace fgt {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::invalid_probability: return "invalid_probability";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::degenerate_community: return "degenerate_community";
    case ErrorCode::no_valid_size: return "no_valid_size";
    case ErrorCode::permutation_cap: return "permutation_cap";
    case ErrorCode::zero_variance: return "zero_variance";
    case ErrorCode::io_error: return "io_error";
    case ErrorCode::parse_error: return "parse_error";
  }
  return "unknown";
}

}  // namespace fgt
