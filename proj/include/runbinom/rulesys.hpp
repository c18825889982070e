#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "runbinom/bigint.hpp"

namespace runbinom {

/// coeff * a(2^scale_exp * q + offset)
struct RuleTerm {
  BigInt coeff;
  unsigned scale_exp = 0;
  std::uint64_t offset = 0;

  friend bool operator==(const RuleTerm&, const RuleTerm&) = default;
};

/// a(2^modulus_exp * q + residue) = sum of terms, for every q >= 0 whose index
/// is not a base value.
struct ResidueRule {
  unsigned modulus_exp = 1;
  std::uint64_t residue = 0;
  std::vector<RuleTerm> terms;

  std::uint64_t modulus() const { return std::uint64_t{1} << modulus_exp; }

  friend bool operator==(const ResidueRule&, const ResidueRule&) = default;
};

/// A validated residue-class recurrence system over powers-of-two moduli.
///
/// Construction checks that every index matches a rule (longest modulus wins,
/// duplicate residues are rejected) and that every child argument is strictly
/// smaller than its parent, so evaluation always terminates. Violations throw
/// Error(invalid_rule_system).
class RuleSystem {
 public:
  static constexpr unsigned max_modulus_exp = 20;

  RuleSystem(std::vector<ResidueRule> rules, std::map<std::uint64_t, BigInt> base_values);

  const std::vector<ResidueRule>& rules() const { return rules_; }
  const std::map<std::uint64_t, BigInt>& base_values() const { return base_values_; }

  /// The rule governing n (ignores base values).
  const ResidueRule& rule_for(const BigInt& n) const;

 private:
  std::vector<ResidueRule> rules_;
  std::map<std::uint64_t, BigInt> base_values_;
  unsigned table_exp_ = 0;
  std::vector<std::size_t> table_;  // residue mod 2^table_exp_ -> rule index
};

/// Parses the textual form: one rule per line,
///   a(<2^m>n+<r>) = <±c>*a(<e>n+<f>) ...     or     a(<n>) = <v>
/// Whitespace-insensitive; '#' starts a comment.
RuleSystem parse_rule_system(std::string_view text);

std::string to_text(const ResidueRule& rule);
std::string to_text(const RuleSystem& system);

/// Memoizing evaluator. Cost is polynomial in the bit length of n because each
/// rule shifts its argument right by at least one bit.
///
/// Thread-safe: concurrent calls serialize on an internal lock and share the
/// cache, each entry written once with its final value.
class RuleEvaluator {
 public:
  using EdgeObserver = std::function<void(const BigInt& parent, const BigInt& child)>;

  explicit RuleEvaluator(RuleSystem system);

  /// Throws Error(negative_value) if any value on the way is negative.
  BigInt eval(const BigInt& n);

  /// [eval(0), ..., eval(count - 1)]
  std::vector<BigInt> first_terms(std::size_t count);

  const RuleSystem& system() const { return system_; }

  /// Called for every (parent, child) dependency the evaluator expands.
  void set_edge_observer(EdgeObserver observer);

  std::size_t cache_size() const;

 private:
  RuleSystem system_;
  mutable std::mutex mutex_;
  std::map<BigInt, BigInt> memo_;
  EdgeObserver observer_;
};

BigInt eval(const RuleSystem& system, const BigInt& n);
std::vector<BigInt> first_terms(const RuleSystem& system, std::size_t count);

}  // namespace runbinom
