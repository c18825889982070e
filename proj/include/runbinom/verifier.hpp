#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "runbinom/parity.hpp"
#include "runbinom/registry.hpp"

namespace runbinom {

/// The argument pair (n_scale n + n_offset, k_scale k + k_offset) of F.
struct AffinePair {
  std::uint64_t n_scale = 1;
  std::uint64_t n_offset = 0;
  std::uint64_t k_scale = 1;
  std::uint64_t k_offset = 0;

  friend bool operator==(const AffinePair&, const AffinePair&) = default;
};

enum class StatementDomain { all, k_greater_than_n };

/// "F(lhs) = 0" (rhs empty) or "F(lhs) = F(rhs)" at fixed coefficients, for
/// all n, k in the domain.
struct IdentityStatement {
  CoefficientVector coefficients;
  AffinePair lhs;
  std::optional<AffinePair> rhs;
  StatementDomain domain = StatementDomain::all;
  bool expect_pass = true;
  std::string ref;
  /// Side condition under which a conditional bullet was instantiated.
  std::string condition;
  /// Line came from a "coeffs=*" fixture entry.
  bool universal = false;
};

std::string to_text(const IdentityStatement& stmt);

enum class Outcome { pass, fail };

struct VerificationReport {
  std::string statement;
  std::uint64_t bound = 0;
  Outcome result = Outcome::pass;
  /// Lexicographically minimal failing (n, k); for sequence checks k is unused.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> counterexample;
  std::string detail;
  std::uint64_t checked_count = 0;
  bool expect_pass = true;

  bool passed() const { return result == Outcome::pass; }
  bool as_expected() const { return passed() == expect_pass; }
};

std::string to_text(const VerificationReport& report);

/// Compares both sides for all 0 <= n, k <= bound, scanning n then k and
/// stopping at the first disagreement.
VerificationReport check_identity(const IdentityStatement& stmt, std::uint64_t bound);

/// Whether a named side condition holds for c. Names:
///   "a3-01-a1-1-or-a3-0"   a3 in {0,1} and (a1 = 1 or a3 = 0)
///   "clear:<mod>:<mul>"    (mul a3 AND-NOT mul a1) = 0 mod <mod>, 0 <= mul a1, mul a3 < mod
///   "set:<mod>:<mul>"      (mul a3 AND-NOT mul a1) != 0 mod <mod>
/// std::nullopt when a1 or a3 is negative (regime left unspecified).
/// Throws Error(parse_error) on unknown names.
std::optional<bool> side_condition_holds(std::string_view condition, const CoefficientVector& c);

/// Parses the corpus fixture format, one statement per line:
///   F(<p>n+<q>,<p'>k+<q'>) = 0 | F(<u>n+<v>,<u'>k+<v'>) @ coeffs=<a1,a2,a3,a4> expect=<pass|fail> ref="<anchor>"
/// plus optional when="k>n" and cond=<name>. coeffs=* expands to every
/// registry coefficient vector.
std::vector<IdentityStatement> parse_corpus(std::string_view text);

std::string_view builtin_corpus_text();
const std::vector<IdentityStatement>& builtin_corpus();

std::vector<VerificationReport> check_lemma_corpus(std::uint64_t bound);
std::vector<VerificationReport> check_lemma_corpus(const std::vector<IdentityStatement>& corpus,
                                                   std::uint64_t bound);

/// sum_direct(c, n) = eval(rules, n) = rlt_by_runs(base, n) for n in [0, bound].
/// A negative rule value counts as a failure at that n.
/// Throws Error(bound_exceeded) if bound exceeds oracle_bound.
VerificationReport check_triple_equivalence(const CoefficientVector& c, const RuleSystem& rules,
                                            const BaseSequence& base, std::uint64_t bound,
                                            std::uint64_t oracle_bound = default_oracle_bound);

VerificationReport check_triple_equivalence(const RegistryEntry& entry, std::uint64_t bound,
                                            std::string_view variant = "canonical",
                                            std::optional<CoefficientVector> coefficients = std::nullopt,
                                            std::uint64_t oracle_bound = default_oracle_bound);

// ---------------------------------------------------------------------------
// Rule conjecture

struct ConjectureResult {
  CoefficientVector coefficients;
  unsigned modulus_exp = 0;
  bool even_rule_holds = false;
  /// Validated rules, one per odd residue that admitted a fit.
  std::vector<ResidueRule> discovered_rules;
  /// Odd residues for which no candidate validated (NO_RULE_FOUND).
  std::vector<std::uint64_t> unresolved_residues;
  std::uint64_t sample_bound = 0;
  std::uint64_t validation_bound = 0;
  BigInt a0 = 1;

  bool complete() const { return even_rule_holds && unresolved_residues.empty(); }

  /// Even rule + discovered rules + a(0); std::nullopt unless complete().
  std::optional<RuleSystem> to_rule_system() const;
};

/// Fits a(2^m q + r) for each odd r mod 2^m over the candidate values
/// {a(2^j q + 2^j - 1) : 0 <= j < m} by exact rational solving on indices
/// <= sample_bound, then keeps only fits that hold for every index
/// <= validation_bound. The residue 2^m - 1 is solved over the whole basis
/// (pivoting from the largest argument down); other residues take the
/// sparsest fit, smaller arguments first.
ConjectureResult conjecture_rules(const CoefficientVector& c, unsigned max_modulus_exp,
                                  std::uint64_t sample_bound, std::uint64_t validation_bound);

}  // namespace runbinom
