#include "runbinom/parity.hpp"

#include <charconv>
#include <vector>

#include "runbinom/error.hpp"

namespace runbinom {

namespace {

__extension__ typedef __int128 int128;
__extension__ typedef unsigned __int128 uint128;

}  // namespace

std::string to_string(const CoefficientVector& c) {
  return std::to_string(c.a1) + "," + std::to_string(c.a2) + "," + std::to_string(c.a3) + "," +
         std::to_string(c.a4);
}

CoefficientVector parse_coefficients(std::string_view text) {
  std::string cleaned;
  for (char ch : text) {
    if (ch != ' ' && ch != '(' && ch != ')') cleaned.push_back(ch);
  }
  std::vector<std::int32_t> values;
  std::string_view rest = cleaned;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view field = rest.substr(0, comma);
    std::int32_t value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    if (!field.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (field.empty() || ec != std::errc() || ptr != last) {
      throw Error(ErrorCode::parse_error,
                  "bad coefficient '" + std::string(field) + "' in '" + std::string(text) + "'");
    }
    values.push_back(value);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (values.size() != 4) {
    throw Error(ErrorCode::parse_error,
                "expected four comma-separated coefficients, got '" + std::string(text) + "'");
  }
  return {values[0], values[1], values[2], values[3]};
}

Parity binom_parity(const BigInt& n, const BigInt& k) {
  if (k > n) return Parity::zero;
  return parity_of(and_not(k, n).is_zero());
}

Parity product_parity(std::span<const std::pair<BigInt, BigInt>> pairs) {
  for (const auto& [n, k] : pairs) {
    if (binom_parity(n, k) == Parity::zero) return Parity::zero;
  }
  return Parity::one;
}

Parity product_parity(std::span<const std::pair<std::uint64_t, std::uint64_t>> pairs) {
  std::uint64_t any_borrow = 0;
  for (const auto& [n, k] : pairs) any_borrow |= and_not(k, n);
  return parity_of(any_borrow == 0);
}

std::optional<BigInt> g_value(const CoefficientVector& c, const BigInt& n, const BigInt& k) {
  const BigInt top = c.a1 * n + c.a2 * k;
  const BigInt bot = c.a3 * n + c.a4 * k;
  if (top < 0 || bot < 0) return std::nullopt;
  return and_not(bot, top) | and_not(k, n);
}

Parity f_value(const CoefficientVector& c, const BigInt& n, const BigInt& k) {
  if (k > n) return Parity::zero;
  const auto g = g_value(c, n, k);
  return parity_of(g && g->is_zero());
}

Parity f_value(const CoefficientVector& c, std::uint64_t n, std::uint64_t k) {
  if (k > n || and_not(k, n) != 0) return Parity::zero;
  const int128 top = int128{c.a1} * static_cast<int128>(n) + int128{c.a2} * static_cast<int128>(k);
  const int128 bot = int128{c.a3} * static_cast<int128>(n) + int128{c.a4} * static_cast<int128>(k);
  if (top < 0 || bot < 0) return Parity::zero;
  return parity_of((static_cast<uint128>(bot) & ~static_cast<uint128>(top)) == 0);
}

std::uint64_t sum_direct(const CoefficientVector& c, std::uint64_t n, std::uint64_t bound) {
  if (n > bound) {
    throw Error(ErrorCode::bound_exceeded,
                "n = " + std::to_string(n) + " exceeds the oracle bound " + std::to_string(bound) +
                    "; use the rule-system evaluator");
  }
  std::uint64_t total = 0;
  // Walk the submasks of n downward from n itself; k = 0 terminates.
  std::uint64_t k = n;
  while (true) {
    total += static_cast<std::uint64_t>(to_int(f_value(c, n, k)));
    if (k == 0) break;
    k = (k - 1) & n;
  }
  return total;
}

std::uint64_t sum_direct_naive(const CoefficientVector& c, std::uint64_t n) {
  std::uint64_t total = 0;
  for (std::uint64_t k = 0; k <= n; ++k) total += static_cast<std::uint64_t>(to_int(f_value(c, n, k)));
  return total;
}

}  // namespace runbinom
