#include "runbinom/transform.hpp"

#include <algorithm>

#include "runbinom/error.hpp"

namespace runbinom {

namespace {

bool all_ones(const BigInt& n) { return n > 0 && BigInt(n & (n + 1)) == 0; }

}  // namespace

RunDecomposition runs_of_ones(const BigInt& n) {
  RunDecomposition out;
  std::size_t run = 0;
  const std::size_t len = bit_length(n);
  for (std::size_t i = 0; i < len; ++i) {
    if (boost::multiprecision::bit_test(n, static_cast<unsigned>(i))) {
      ++run;
    } else if (run != 0) {
      out.run_lengths.push_back(run);
      run = 0;
    }
  }
  if (run != 0) out.run_lengths.push_back(run);
  return out;
}

void LinearRecurrence::validate() const {
  if (feedback.empty()) throw Error(ErrorCode::malformed_recurrence, "recurrence order must be >= 1");
  if (feedback.size() != initial.size()) {
    throw Error(ErrorCode::malformed_recurrence,
                "recurrence has " + std::to_string(feedback.size()) + " feedback coefficients but " +
                    std::to_string(initial.size()) + " initial values");
  }
  if (initial.front() != 1) {
    throw Error(ErrorCode::malformed_recurrence, "S_0 must be 1, got " + initial.front().str());
  }
  if (feedback.size() >= RuleSystem::max_modulus_exp) {
    throw Error(ErrorCode::malformed_recurrence, "recurrence order too large");
  }
}

std::vector<BigInt> LinearRecurrence::terms(std::size_t count) const {
  std::vector<BigInt> s(initial.begin(), initial.begin() + std::min(count, initial.size()));
  while (s.size() < count) {
    BigInt next = 0;
    for (std::size_t i = 0; i < feedback.size(); ++i) next += feedback[i] * s[s.size() - 1 - i];
    s.push_back(std::move(next));
  }
  return s;
}

BaseSequence::BaseSequence(LinearRecurrence recurrence) : source_(std::move(recurrence)) {
  std::get<LinearRecurrence>(source_).validate();
}

BaseSequence::BaseSequence(std::vector<BigInt> terms) : source_(std::move(terms)) {}

BaseSequence BaseSequence::explicit_terms(std::vector<BigInt> terms) {
  if (terms.empty() || terms.front() != 1) {
    throw Error(ErrorCode::malformed_recurrence, "explicit base sequence must start with S_0 = 1");
  }
  return BaseSequence(std::move(terms));
}

std::vector<BigInt> BaseSequence::prefix(std::size_t count) const {
  if (const auto* rec = recurrence()) return rec->terms(count);
  const auto& list = std::get<std::vector<BigInt>>(source_);
  if (list.size() < count) {
    throw Error(ErrorCode::exhausted_base, "base sequence has " + std::to_string(list.size()) +
                                               " terms but S_" + std::to_string(count - 1) +
                                               " is needed");
  }
  return {list.begin(), list.begin() + static_cast<std::ptrdiff_t>(count)};
}

BigInt rlt_by_runs(const BaseSequence& base, const BigInt& n) {
  const RunDecomposition runs = runs_of_ones(n);
  if (runs.run_lengths.empty()) return 1;
  const std::size_t longest = *std::max_element(runs.run_lengths.begin(), runs.run_lengths.end());
  const std::vector<BigInt> s = base.prefix(longest + 1);
  BigInt product = 1;
  for (std::size_t len : runs.run_lengths) product *= s[len];
  return product;
}

SplitResult mu(const BigInt& n) {
  if (n <= 0 || !boost::multiprecision::bit_test(n, 0) || all_ones(n)) {
    throw Error(ErrorCode::not_splittable,
                n.str() + " is not an odd positive integer outside the form 2^k - 1");
  }
  // Scan downward from the msb; the first clear bit gives the smallest a.
  std::size_t zero = bit_length(n) - 1;
  while (boost::multiprecision::bit_test(n, static_cast<unsigned>(zero))) --zero;
  const std::size_t m = zero + 1;
  const BigInt low_mask = (BigInt(1) << m) - 1;
  return {n >> m, n & low_mask, m};
}

namespace {

// T_j for j < 2^k, using only the transform's own rules at q = 0.
BigInt small_transform(const LinearRecurrence& rec, std::uint64_t j) {
  if (j == 0) return rec.initial[0];
  if (j % 2 == 0) return small_transform(rec, j / 2);
  if ((j & (j + 1)) == 0) {
    std::size_t len = 0;
    while ((j >> len) != 0) ++len;
    return rec.initial.at(len);
  }
  const SplitResult s = mu(BigInt(j));
  return small_transform(rec, s.b.convert_to<std::uint64_t>()) *
         small_transform(rec, s.a.convert_to<std::uint64_t>());
}

}  // namespace

RuleSystem rlt_rule_system(const LinearRecurrence& rec) {
  rec.validate();
  const unsigned k = static_cast<unsigned>(rec.order() - 1);
  const unsigned w_exp = k + 1;
  const std::uint64_t half = std::uint64_t{1} << k;  // 2^k
  const std::uint64_t w = half << 1;

  std::vector<ResidueRule> rules;
  rules.push_back({1, 0, {{BigInt(1), 0, 0}}});
  for (std::uint64_t i = 1; i < half; i += 2) {
    rules.push_back({w_exp, i, {{small_transform(rec, i), 0, 0}}});
  }
  for (std::uint64_t i = 1; i + 3 <= half; i += 2) {
    const SplitResult s = mu(BigInt(half + i));
    if (s.m > w_exp) {
      throw Error(ErrorCode::malformed_recurrence, "split of " + std::to_string(half + i) + " too wide");
    }
    rules.push_back({w_exp, half + i,
                     {{small_transform(rec, s.b.convert_to<std::uint64_t>()),
                       static_cast<unsigned>(w_exp - s.m), s.a.convert_to<std::uint64_t>()}}});
  }
  ResidueRule top{w_exp, w - 1, {}};
  for (unsigned i = 0; i <= k; ++i) {
    if (rec.feedback[i] == 0) continue;
    const unsigned j = k - i;
    top.terms.push_back({rec.feedback[i], j, (std::uint64_t{1} << j) - 1});
  }
  rules.push_back(std::move(top));
  return RuleSystem(std::move(rules), {{0, rec.initial[0]}});
}

RltEvaluator::RltEvaluator(const LinearRecurrence& recurrence)
    : evaluator_(rlt_rule_system(recurrence)) {}

BigInt rlt_by_recurrence(const LinearRecurrence& recurrence, const BigInt& n) {
  return RltEvaluator(recurrence)(n);
}

}  // namespace runbinom
