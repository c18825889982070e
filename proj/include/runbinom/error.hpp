#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace runbinom {

enum class ErrorCode {
  bound_exceeded,
  malformed_recurrence,
  exhausted_base,
  not_splittable,
  invalid_rule_system,
  uncovered_index,
  negative_value,
  not_found,
  parse_error,
  gap_error,
  offline_miss,
  network_error,
  io_error,
  usage,
};

std::string_view to_string(ErrorCode code);

/// Library failure with a machine-readable code. Results such as a failed
/// verification are reported as values, never thrown.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace runbinom
