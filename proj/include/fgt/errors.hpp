#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fgt {

enum class ErrorCode {
  invalid_argument,
  invalid_probability,
  dimension_mismatch,
  degenerate_community,
  no_valid_size,
  permutation_cap,
  zero_variance,
  io_error,
  parse_error,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type; the code is what the
// CLI puts into its machine-readable error record.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fgt
