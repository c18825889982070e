#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "runbinom/bigint.hpp"

namespace runbinom {

/// A binomial coefficient (or product of them) reduced mod 2.
enum class Parity : std::uint8_t { zero = 0, one = 1 };

constexpr int to_int(Parity p) { return static_cast<int>(p); }
constexpr Parity parity_of(bool odd) { return odd ? Parity::one : Parity::zero; }

/// Coefficients (a1, a2, a3, a4) of
///   F(n, k) = C(a1 n + a2 k, a3 n + a4 k) C(n, k) mod 2.
/// Signs are unrestricted; a negative argument makes the binomial zero.
struct CoefficientVector {
  std::int32_t a1 = 0;
  std::int32_t a2 = 0;
  std::int32_t a3 = 0;
  std::int32_t a4 = 0;

  friend auto operator<=>(const CoefficientVector&, const CoefficientVector&) = default;
};

std::string to_string(const CoefficientVector& c);

/// Parses "a1,a2,a3,a4" (signed decimal, optional surrounding parentheses).
CoefficientVector parse_coefficients(std::string_view text);

/// 1 iff C(n, k) is odd, i.e. k is a bitwise submask of n. Returns 0 for k > n.
constexpr Parity binom_parity(std::uint64_t n, std::uint64_t k) {
  return parity_of(and_not(k, n) == 0);
}
Parity binom_parity(const BigInt& n, const BigInt& k);

/// Parity of prod C(n_a, k_a); the empty product is odd.
Parity product_parity(std::span<const std::pair<BigInt, BigInt>> pairs);
Parity product_parity(std::span<const std::pair<std::uint64_t, std::uint64_t>> pairs);

/// g(n, k) = ((a3 n + a4 k) AND-NOT (a1 n + a2 k)) OR (k AND-NOT n).
/// std::nullopt signals OUT_OF_DOMAIN: one of the binomial arguments is
/// negative, so F vanishes by convention.
std::optional<BigInt> g_value(const CoefficientVector& c, const BigInt& n, const BigInt& k);

Parity f_value(const CoefficientVector& c, const BigInt& n, const BigInt& k);

/// Machine-word kernel used by the oracles; identical to the BigInt overload
/// for all n, k < 2^62.
Parity f_value(const CoefficientVector& c, std::uint64_t n, std::uint64_t k);

inline constexpr std::uint64_t default_oracle_bound = std::uint64_t{1} << 24;
inline constexpr std::uint64_t max_oracle_bound = std::uint64_t{1} << 40;

/// a(n) = sum_{k=0}^{n} F(n, k), by direct summation. Only submasks k of n can
/// contribute, so the cost is 2^popcount(n) kernel calls.
/// Throws Error(bound_exceeded) if n > bound.
std::uint64_t sum_direct(const CoefficientVector& c, std::uint64_t n,
                         std::uint64_t bound = default_oracle_bound);

/// The same sum with a plain loop over every k in [0, n].
std::uint64_t sum_direct_naive(const CoefficientVector& c, std::uint64_t n);

}  // namespace runbinom
