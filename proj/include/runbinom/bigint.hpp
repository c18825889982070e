#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace runbinom {

/// Arbitrary-precision signed integer. Nonnegative values double as the
/// unbounded bit strings the parity kernels operate on.
using BigInt = boost::multiprecision::cpp_int;

/// Bits set in x and clear in y. Defined operand-wise, so no infinite-width
/// complement is ever formed. Both operands must be nonnegative.
BigInt and_not(const BigInt& x, const BigInt& y);

constexpr std::uint64_t and_not(std::uint64_t x, std::uint64_t y) { return x & ~y; }

/// Number of significant bits; 0 for 0.
std::size_t bit_length(const BigInt& x);

std::size_t popcount(const BigInt& x);

/// Parses an optionally signed decimal integer of any length.
/// Throws Error(parse_error) on anything else.
BigInt parse_bigint(std::string_view text);

inline std::string to_string(const BigInt& x) { return x.str(); }

}  // namespace runbinom
