#include "runbinom/bigint.hpp"

#include <cctype>

#include "runbinom/error.hpp"

namespace runbinom {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::bound_exceeded: return "BOUND_EXCEEDED";
    case ErrorCode::malformed_recurrence: return "MALFORMED_RECURRENCE";
    case ErrorCode::exhausted_base: return "EXHAUSTED_BASE";
    case ErrorCode::not_splittable: return "NOT_SPLITTABLE";
    case ErrorCode::invalid_rule_system: return "INVALID_RULE_SYSTEM";
    case ErrorCode::uncovered_index: return "UNCOVERED_INDEX";
    case ErrorCode::negative_value: return "NEGATIVE_VALUE";
    case ErrorCode::not_found: return "NOT_FOUND";
    case ErrorCode::parse_error: return "PARSE_ERROR";
    case ErrorCode::gap_error: return "GAP_ERROR";
    case ErrorCode::offline_miss: return "OFFLINE_MISS";
    case ErrorCode::network_error: return "NETWORK_ERROR";
    case ErrorCode::io_error: return "IO_ERROR";
    case ErrorCode::usage: return "USAGE";
  }
  return "UNKNOWN";
}

BigInt and_not(const BigInt& x, const BigInt& y) { return x ^ (x & y); }

std::size_t bit_length(const BigInt& x) {
  if (x.is_zero()) return 0;
  return boost::multiprecision::msb(x) + 1;
}

std::size_t popcount(const BigInt& x) {
  std::size_t count = 0;
  const std::size_t len = bit_length(x);
  for (std::size_t i = 0; i < len; ++i) {
    if (boost::multiprecision::bit_test(x, static_cast<unsigned>(i))) ++count;
  }
  return count;
}

BigInt parse_bigint(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) {
    throw Error(ErrorCode::parse_error, "expected an integer, got '" + std::string(text) + "'");
  }
  BigInt value = 0;
  for (; pos < text.size(); ++pos) {
    const unsigned char ch = static_cast<unsigned char>(text[pos]);
    if (!std::isdigit(ch)) {
      throw Error(ErrorCode::parse_error, "expected an integer, got '" + std::string(text) + "'");
    }
    value = value * 10 + (ch - '0');
  }
  return negative ? BigInt(-value) : value;
}

}  // namespace runbinom
