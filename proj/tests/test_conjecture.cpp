#include <doctest.h>

#include <algorithm>

#include "runbinom/error.hpp"
#include "runbinom/linsolve.hpp"
#include "runbinom/registry.hpp"
#include "runbinom/verifier.hpp"

using namespace runbinom;

namespace {

// Term order is presentation only; compare with terms sorted by argument.
std::string sorted_text(ResidueRule rule) {
  std::sort(rule.terms.begin(), rule.terms.end(),
            [](const RuleTerm& x, const RuleTerm& y) { return x.scale_exp > y.scale_exp; });
  return to_text(rule);
}

std::vector<std::string> rule_lines(const ConjectureResult& r) {
  std::vector<std::string> out;
  for (const auto& rule : r.discovered_rules) out.push_back(sorted_text(rule));
  return out;
}

// Odd-residue rules of a stored system, as text.
std::vector<std::string> odd_rules(const RuleSystem& rs) {
  std::vector<std::string> out;
  for (const auto& rule : rs.rules()) {
    if (rule.residue % 2 == 1) out.push_back(sorted_text(rule));
  }
  return out;
}

}  // namespace

TEST_CASE("solve_exact: unique, underdetermined and inconsistent systems") {
  using R = Rational;
  auto unique = solve_exact({{R(2), R(1)}, {R(1), R(3)}}, {R(3), R(5)});
  REQUIRE(unique);
  CHECK(unique->x == std::vector<R>{R(4, 5), R(7, 5)});
  CHECK(unique->rank == 2);

  // x + y = 2 twice: the earlier column takes the pivot, the free one is zero.
  auto under = solve_exact({{R(1), R(1)}, {R(2), R(2)}}, {R(2), R(4)});
  REQUIRE(under);
  CHECK(under->x == std::vector<R>{R(2), R(0)});
  CHECK(under->rank == 1);

  CHECK_FALSE(solve_exact({{R(1), R(1)}, {R(1), R(1)}}, {R(1), R(2)}));
  auto empty = solve_exact({}, {});
  REQUIRE(empty);
  CHECK(empty->x.empty());
}

TEST_CASE("solve_exact on a 4x4 system with fractional answer") {
  using R = Rational;
  const std::vector<std::vector<R>> a{{R(1), R(2), R(0), R(1)},
                                      {R(0), R(1), R(3), R(0)},
                                      {R(2), R(0), R(1), R(1)},
                                      {R(1), R(1), R(1), R(1)}};
  const std::vector<R> x{R(1, 2), R(-3), R(2, 7), R(5)};
  std::vector<R> b(4, R(0));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) b[i] += a[i][j] * x[j];
  }
  auto solved = solve_exact(a, b);
  REQUIRE(solved);
  CHECK(solved->x == x);
}

TEST_CASE("re-derives the stored rules of four entries") {
  struct Case {
    const char* entry;
    unsigned m;
  };
  for (const Case& c : {Case{"positive-integers", 2}, Case{"fibonacci", 2}, Case{"narayana", 3},
                        Case{"powers-of-2", 2}}) {
    const RegistryEntry& e = lookup(c.entry);
    const ConjectureResult r = conjecture_rules(e.coefficients, c.m, 1024, 4096);
    CHECK(r.complete());
    CHECK(r.even_rule_holds);
    CHECK_MESSAGE(rule_lines(r) == odd_rules(e.rules), c.entry);
    const auto rs = r.to_rule_system();
    REQUIRE(rs);
    CHECK(first_terms(*rs, 4096) == first_terms(e.rules, 4096));
  }
}

TEST_CASE("published relations, coefficient for coefficient") {
  const auto integers = rule_lines(conjecture_rules({1, 1, 1, -1}, 2, 1024, 4096));
  CHECK(integers == std::vector<std::string>{"a(4n+1) = 2*a(n)", "a(4n+3) = 2*a(2n+1) - a(n)"});
  const auto fib = rule_lines(conjecture_rules({1, -1, 0, 2}, 2, 1024, 4096));
  CHECK(fib == std::vector<std::string>{"a(4n+1) = a(n)", "a(4n+3) = a(2n+1) + a(n)"});
}

TEST_CASE("Lucas vector at modulus 16 gives the corrected residue-9 rule") {
  const ConjectureResult r = conjecture_rules({1, 2, 2, -1}, 4, 1024, 4096);
  CHECK(r.complete());
  CHECK(rule_lines(r) == odd_rules(lookup("lucas").rules));
}

TEST_CASE("too small a modulus leaves residues unresolved") {
  const ConjectureResult r = conjecture_rules({1, -1, 0, 6}, 2, 1024, 4096);
  CHECK_FALSE(r.complete());
  CHECK_FALSE(r.unresolved_residues.empty());
  CHECK_FALSE(r.to_rule_system().has_value());
}

TEST_CASE("the even rule holds for arbitrary vectors") {
  // F(2n,2k) = F(n,k) and F(2n,2k+1) = 0, so a(2n) = a(n) whatever the coefficients.
  for (const CoefficientVector c : {CoefficientVector{1, 1, 0, 0}, CoefficientVector{3, -2, 1, 4},
                                    CoefficientVector{0, 5, 2, 1}}) {
    CHECK(conjecture_rules(c, 1, 256, 1024).even_rule_holds);
  }
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(conjecture_rules({1, 0, 0, 1}, 0, 64, 64), Error);
  CHECK_THROWS_AS(conjecture_rules({1, 0, 0, 1}, 2, 128, 64), Error);
}
