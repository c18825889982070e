#include <algorithm>
#include <functional>

#include "runbinom/error.hpp"
#include "runbinom/linsolve.hpp"
#include "runbinom/verifier.hpp"

namespace runbinom {

std::optional<ExactSolution> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[row]);
    std::swap(b[pivot], b[row]);
    const Rational inv = 1 / a[row][col];
    for (std::size_t j = col; j < cols; ++j) a[row][j] *= inv;
    b[row] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || a[i][col] == 0) continue;
      const Rational factor = a[i][col];
      for (std::size_t j = col; j < cols; ++j) a[i][j] -= factor * a[row][j];
      b[i] -= factor * b[row];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < rows; ++i) {
    if (b[i] != 0) return std::nullopt;
  }
  ExactSolution solution{std::vector<Rational>(cols, Rational(0)), row};
  for (std::size_t i = 0; i < row; ++i) solution.x[pivot_col[i]] = b[i];
  return solution;
}

namespace {

struct Candidate {
  unsigned scale_exp;
  std::uint64_t offset;
};

class ConjectureEngine {
 public:
  ConjectureEngine(const CoefficientVector& c, std::uint64_t sample_bound, std::uint64_t validation_bound)
      : sample_bound_(sample_bound), validation_bound_(validation_bound) {
    values_.reserve(validation_bound + 1);
    for (std::uint64_t n = 0; n <= validation_bound; ++n) {
      values_.push_back(static_cast<std::int64_t>(sum_direct(c, n, max_oracle_bound)));
    }
  }

  std::int64_t a(std::uint64_t n) const { return values_[n]; }

  bool even_rule_holds() const {
    for (std::uint64_t n = 0; 2 * n <= validation_bound_; ++n) {
      if (a(2 * n) != a(n)) return false;
    }
    return true;
  }

  // Exact fit on sampled q; returns an integral rule or nothing.
  std::optional<ResidueRule> fit(unsigned m, std::uint64_t r, const std::vector<Candidate>& basis) const {
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    for (std::uint64_t q = 0; (q << m) + r <= sample_bound_; ++q) {
      std::vector<Rational> row;
      for (const Candidate& cand : basis) row.emplace_back(a((q << cand.scale_exp) + cand.offset));
      rows.push_back(std::move(row));
      rhs.emplace_back(a((q << m) + r));
    }
    if (rows.empty()) return std::nullopt;
    const auto solution = solve_exact(std::move(rows), std::move(rhs));
    if (!solution) return std::nullopt;
    ResidueRule rule{m, r, {}};
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const Rational& x = solution->x[i];
      if (x == 0) continue;
      if (boost::multiprecision::denominator(x) != 1) return std::nullopt;
      rule.terms.push_back({boost::multiprecision::numerator(x), basis[i].scale_exp, basis[i].offset});
    }
    if (!validates(rule)) return std::nullopt;
    return rule;
  }

  bool validates(const ResidueRule& rule) const {
    for (std::uint64_t q = 0; (q << rule.modulus_exp) + rule.residue <= validation_bound_; ++q) {
      std::int64_t sum = 0;
      for (const RuleTerm& t : rule.terms) {
        sum += t.coeff.convert_to<std::int64_t>() * a((q << t.scale_exp) + t.offset);
      }
      if (sum != a((q << rule.modulus_exp) + rule.residue)) return false;
    }
    return true;
  }

 private:
  std::uint64_t sample_bound_;
  std::uint64_t validation_bound_;
  std::vector<std::int64_t> values_;
};

// All subsets of `pool` of the given size, in lexicographic order of positions.
void for_each_subset(const std::vector<Candidate>& pool, std::size_t size,
                     const std::function<bool(const std::vector<Candidate>&)>& visit) {
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  while (true) {
    std::vector<Candidate> subset;
    for (std::size_t i : idx) subset.push_back(pool[i]);
    if (visit(subset)) return;
    std::size_t i = size;
    while (i > 0 && idx[i - 1] == pool.size() - size + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::optional<RuleSystem> ConjectureResult::to_rule_system() const {
  if (!complete()) return std::nullopt;
  std::vector<ResidueRule> rules;
  rules.push_back({1, 0, {{BigInt(1), 0, 0}}});
  rules.insert(rules.end(), discovered_rules.begin(), discovered_rules.end());
  return RuleSystem(std::move(rules), {{0, a0}});
}

ConjectureResult conjecture_rules(const CoefficientVector& c, unsigned max_modulus_exp,
                                  std::uint64_t sample_bound, std::uint64_t validation_bound) {
  if (max_modulus_exp < 1 || max_modulus_exp > 12) {
    throw Error(ErrorCode::usage, "modulus exponent must be between 1 and 12");
  }
  if (validation_bound < sample_bound) {
    throw Error(ErrorCode::usage, "validation bound must be at least the sample bound");
  }
  if (validation_bound > max_oracle_bound) {
    throw Error(ErrorCode::bound_exceeded, "validation bound exceeds the oracle bound");
  }
  const ConjectureEngine engine(c, sample_bound, validation_bound);
  ConjectureResult result;
  result.coefficients = c;
  result.modulus_exp = max_modulus_exp;
  result.sample_bound = sample_bound;
  result.validation_bound = validation_bound;
  result.a0 = engine.a(0);
  result.even_rule_holds = engine.even_rule_holds();

  const unsigned m = max_modulus_exp;
  const std::uint64_t top = (std::uint64_t{1} << m) - 1;
  for (std::uint64_t r = 1; r <= top; r += 2) {
    // a(q), a(2q+1), a(4q+3), ... restricted to arguments below r at q = 0.
    std::vector<Candidate> basis;
    for (unsigned j = 0; j < m; ++j) {
      const std::uint64_t offset = (std::uint64_t{1} << j) - 1;
      if (offset < r) basis.push_back({j, offset});
    }
    std::optional<ResidueRule> found;
    if (r == top) {
      std::vector<Candidate> largest_first(basis.rbegin(), basis.rend());
      found = engine.fit(m, r, largest_first);
    } else {
      for (std::size_t size = 1; size <= basis.size() && !found; ++size) {
        for_each_subset(basis, size, [&](const std::vector<Candidate>& subset) {
          found = engine.fit(m, r, subset);
          return found.has_value();
        });
      }
    }
    if (found) {
      std::sort(found->terms.begin(), found->terms.end(),
                [](const RuleTerm& x, const RuleTerm& y) { return x.scale_exp > y.scale_exp; });
      result.discovered_rules.push_back(std::move(*found));
    } else {
      result.unresolved_residues.push_back(r);
    }
  }
  return result;
}

}  // namespace runbinom
