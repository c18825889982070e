#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "runbinom/bigint.hpp"
#include "runbinom/rulesys.hpp"

namespace runbinom {

/// Lengths of the maximal blocks of 1-bits of n, least significant block first.
struct RunDecomposition {
  std::vector<std::size_t> run_lengths;
};

RunDecomposition runs_of_ones(const BigInt& n);

/// S_{n+1} = sum_{i=0}^{k} feedback[i] * S_{n-i}, with S_i = initial[i] for
/// i = 0..k. The run length transform needs initial[0] == 1.
struct LinearRecurrence {
  std::vector<BigInt> feedback;
  std::vector<BigInt> initial;

  std::size_t order() const { return feedback.size(); }

  /// Throws Error(malformed_recurrence) unless order >= 1, both vectors have
  /// the same length and initial[0] == 1.
  void validate() const;

  std::vector<BigInt> terms(std::size_t count) const;
};

/// Base sequence of a run length transform: either a linear recurrence or an
/// explicit finite list of terms (starting with S_0 = 1).
class BaseSequence {
 public:
  BaseSequence(LinearRecurrence recurrence);
  static BaseSequence explicit_terms(std::vector<BigInt> terms);

  /// S_0 .. S_{count-1}. Throws Error(exhausted_base) if an explicit list is
  /// shorter than count.
  std::vector<BigInt> prefix(std::size_t count) const;

  /// nullptr for explicit lists.
  const LinearRecurrence* recurrence() const { return std::get_if<LinearRecurrence>(&source_); }

 private:
  explicit BaseSequence(std::vector<BigInt> terms);
  std::variant<LinearRecurrence, std::vector<BigInt>> source_;
};

/// T_n = product of S(l) over the run lengths l of n; T_0 = S_0 = 1.
BigInt rlt_by_runs(const BaseSequence& base, const BigInt& n);

/// mu(n) = (a, b, m): n = a 2^m + b with 2^m > 2b and a minimal, i.e. the
/// split at the highest 0-bit of n.
struct SplitResult {
  BigInt a;
  BigInt b;
  std::size_t m = 0;

  friend bool operator==(const SplitResult&, const SplitResult&) = default;
};

/// Throws Error(not_splittable) if n is even or of the form 2^k - 1.
SplitResult mu(const BigInt& n);

/// The residue rule system satisfied by the run length transform of an
/// order-(k+1) recurrence, with w = 2^(k+1):
///   T_0 = 1, T_{2n} = T_n,
///   T_{wn+i} = T_i T_n                        (odd i < 2^k)
///   T_{wn+2^k+i} = T_b T_{wn/2^m + a}         (odd i <= 2^k - 3, mu(2^k+i) = (a,b,m))
///   T_{wn+w-1} = sum_i d_i T_{2^(k-i) n + 2^(k-i) - 1}
/// The constants T_i, T_b are obtained from the same rules at n = 0.
RuleSystem rlt_rule_system(const LinearRecurrence& recurrence);

/// Run length transform evaluated only through rlt_rule_system, memoized.
class RltEvaluator {
 public:
  explicit RltEvaluator(const LinearRecurrence& recurrence);

  BigInt operator()(const BigInt& n) { return evaluator_.eval(n); }
  const RuleSystem& system() const { return evaluator_.system(); }

 private:
  RuleEvaluator evaluator_;
};

BigInt rlt_by_recurrence(const LinearRecurrence& recurrence, const BigInt& n);

}  // namespace runbinom
