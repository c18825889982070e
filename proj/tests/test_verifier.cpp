#include <doctest.h>

#include <map>
#include <set>

#include "runbinom/error.hpp"
#include "runbinom/registry.hpp"
#include "runbinom/verifier.hpp"

using namespace runbinom;

namespace {

IdentityStatement statement(CoefficientVector c, AffinePair lhs, std::optional<AffinePair> rhs) {
  IdentityStatement s;
  s.coefficients = c;
  s.lhs = lhs;
  s.rhs = rhs;
  return s;
}

constexpr AffinePair identity_pair{1, 0, 1, 0};

}  // namespace

TEST_CASE("check_identity passes a true statement") {
  const auto report = check_identity(statement({1, -1, 0, 2}, {4, 3, 4, 1}, identity_pair), 64);
  CHECK(report.passed());
  CHECK(report.checked_count == 65 * 65);
  CHECK_FALSE(report.counterexample.has_value());
}

TEST_CASE("check_identity reports the minimal counterexample") {
  // The correct statement is F(4n+1,4k+1) = 0; equating it to F(n,k) fails at once.
  const auto report = check_identity(statement({1, -1, 0, 2}, {4, 1, 4, 1}, identity_pair), 64);
  CHECK_FALSE(report.passed());
  REQUIRE(report.counterexample.has_value());
  CHECK(*report.counterexample == std::pair<std::uint64_t, std::uint64_t>{0, 0});
  CHECK(to_text(report).starts_with("FAIL"));
}

TEST_CASE("counterexample is lexicographically minimal") {
  // F(2n,2k+1) vs F(n,k) for Gould: first disagreement where F(n,k) = 1, i.e. (0,0).
  auto report = check_identity(statement({1, 0, 0, 1}, {2, 0, 2, 1}, identity_pair), 16);
  CHECK(*report.counterexample == std::pair<std::uint64_t, std::uint64_t>{0, 0});
  // F(2n+1,2k) = 0 for Gould first fails at n = 0, k = 0 (C(1,0) = 1).
  report = check_identity(statement({1, 0, 0, 1}, {2, 1, 2, 0}, std::nullopt), 16);
  CHECK(*report.counterexample == std::pair<std::uint64_t, std::uint64_t>{0, 0});
  // F(n,k) = 0 restricted to k > n holds; without the restriction it fails at (0,0).
  IdentityStatement above = statement({1, 2, 2, -1}, identity_pair, std::nullopt);
  above.domain = StatementDomain::k_greater_than_n;
  CHECK(check_identity(above, 32).passed());
  above.domain = StatementDomain::all;
  CHECK(*check_identity(above, 32).counterexample == std::pair<std::uint64_t, std::uint64_t>{0, 0});
}

TEST_CASE("corpus parsing") {
  const auto parsed = parse_corpus(
      "# comment\n"
      "F(4n+3,4k+1) = F(n,k) @ coeffs=1,-1,0,2 expect=pass ref=\"demo\"\n"
      "F(n,k) = 0 @ coeffs=1,0,0,1 when=\"k>n\" expect=pass ref=\"demo\"\n"
      "F(2n,2k+1) = 0 @ coeffs=* expect=pass ref=\"demo\"\n");
  REQUIRE(parsed.size() == 2 + builtin_entries().size());
  CHECK(parsed[0].lhs == AffinePair{4, 3, 4, 1});
  CHECK(parsed[0].rhs == identity_pair);
  CHECK(parsed[1].domain == StatementDomain::k_greater_than_n);
  CHECK_FALSE(parsed[2].rhs.has_value());
  CHECK(parsed[2].universal);
  CHECK_THROWS_AS(parse_corpus("F(3n,k) = 0 @ coeffs=* expect=pass ref=\"x\"\n"), Error);
  CHECK_THROWS_AS(parse_corpus("F(2n,k) = 0 @ coeffs=* ref=\"x\"\n"), Error);
  CHECK_THROWS_AS(parse_corpus("F(2n,k) = 0 coeffs=* expect=pass ref=\"x\"\n"), Error);
  CHECK_THROWS_AS(parse_corpus("F(2n,k) = 0 @ coeffs=* expect=maybe ref=\"x\"\n"), Error);
}

TEST_CASE("built-in corpus size and coverage") {
  const auto& corpus = builtin_corpus();
  std::size_t lines = 0;
  for (char ch : builtin_corpus_text()) lines += ch == '@';
  CHECK(lines >= 60);
  CHECK(corpus.size() > 1000);
  std::set<std::string> refs;
  for (const auto& s : corpus) refs.insert(s.ref);
  for (const char* ref : {"scale", "binom-zero", "even-k", "mod4-clear", "mod4-set", "fibonacci",
                          "truncated-fibonacci", "one-plus-powers-of-2", "one-then-twos", "positive-integers",
                          "all-ones", "narayana", "repeated-integers", "lucas", "mod8-zero", "mod16-zero",
                          "mod8-clear", "mod16-clear", "above-diagonal"}) {
    CHECK_MESSAGE(refs.contains(ref), ref);
  }
  std::size_t expected_failures = 0;
  for (const auto& s : corpus) expected_failures += s.expect_pass ? 0 : 1;
  CHECK(expected_failures == 5);
}

TEST_CASE("built-in corpus verifies as expected") {
  for (const auto& report : check_lemma_corpus(96)) {
    CHECK_MESSAGE(report.as_expected(), to_text(report));
  }
}

TEST_CASE("conditional statements are listed for exactly the vectors meeting their side condition") {
  // (ref, condition, lhs, rhs) -> vectors listed
  std::map<std::string, std::set<CoefficientVector>> listed;
  std::map<std::string, IdentityStatement> shape;
  for (const auto& s : builtin_corpus()) {
    if (s.condition.empty()) continue;
    const std::string key = s.condition + " " + to_text(IdentityStatement{{}, s.lhs, s.rhs, s.domain});
    listed[key].insert(s.coefficients);
    shape[key] = s;
  }
  CHECK(listed.size() >= 10);
  for (const auto& [key, vectors] : listed) {
    std::set<CoefficientVector> expected;
    for (const auto& e : builtin_entries()) {
      if (side_condition_holds(shape[key].condition, e.coefficients).value_or(false)) {
        expected.insert(e.coefficients);
      }
    }
    CHECK_MESSAGE(vectors == expected, key);
  }
}

TEST_CASE("conditional statements hold for every vector meeting the condition, aliases included") {
  std::set<std::string> seen;
  for (const auto& s : builtin_corpus()) {
    if (s.condition.empty()) continue;
    const std::string key = s.condition + to_text(IdentityStatement{{}, s.lhs, s.rhs, s.domain});
    if (!seen.insert(key).second) continue;
    for (const auto& e : builtin_entries()) {
      std::vector<CoefficientVector> all{e.coefficients};
      all.insert(all.end(), e.aliases.begin(), e.aliases.end());
      for (const auto& c : all) {
        if (!side_condition_holds(s.condition, c).value_or(false)) continue;
        IdentityStatement inst = s;
        inst.coefficients = c;
        CHECK_MESSAGE(check_identity(inst, 48).passed(), to_text(inst) << " cond=" << s.condition);
      }
    }
  }
}

TEST_CASE("side conditions") {
  CHECK(side_condition_holds("a3-01-a1-1-or-a3-0", {1, 0, 0, 1}) == true);
  CHECK(side_condition_holds("a3-01-a1-1-or-a3-0", {1, 2, 2, -1}) == false);
  CHECK(side_condition_holds("clear:4:1", {1, 1, 1, -1}) == true);
  CHECK(side_condition_holds("set:4:1", {1, 2, 2, -1}) == true);
  CHECK(side_condition_holds("clear:8:3", {1, 1, 1, -1}) == true);
  CHECK(side_condition_holds("set:2:1", {-1, 0, 1, 0}) == std::nullopt);
  CHECK_THROWS_AS(side_condition_holds("sometimes", {1, 0, 0, 1}), Error);
  CHECK_THROWS_AS(side_condition_holds("clear:6:1", {1, 0, 0, 1}), Error);
}

TEST_CASE("triple equivalence for every entry and alias") {
  for (const auto& e : builtin_entries()) {
    CHECK_MESSAGE(check_triple_equivalence(e, 1024).passed(), e.name);
    for (const auto& alias : e.aliases) {
      const auto report = check_triple_equivalence(e, 1024, "canonical", alias);
      CHECK_MESSAGE(report.passed(), to_text(report));
    }
  }
}

TEST_CASE("misprinted Lucas rule fails at n = 9; the corrected rule passes") {
  const RegistryEntry& lucas = lookup("lucas");
  const auto printed = check_triple_equivalence(lucas, 1024, "printed");
  CHECK_FALSE(printed.passed());
  CHECK(printed.as_expected());
  CHECK(printed.counterexample->first == 9);
  CHECK(check_triple_equivalence(lucas, 1024).passed());
}

TEST_CASE("misprinted Lucas term list is not a prefix of the sequence") {
  const std::vector<BigInt> printed{1, 2, 2, 3, 2, 4, 3, 5, 2, 4, 4, 5, 3, 6, 5,
                                    8, 2, 4, 4, 6, 4, 8, 5, 8, 3, 6, 6, 8, 5, 10};
  const auto actual = first_terms(lookup("lucas").rules, printed.size());
  std::size_t first_difference = 0;
  while (first_difference < printed.size() && printed[first_difference] == actual[first_difference]) {
    ++first_difference;
  }
  CHECK(first_difference == 1);
  for (std::uint64_t n = 0; n < printed.size(); ++n) {
    CHECK(actual[n] == sum_direct(lookup("lucas").coefficients, n));
  }
}

TEST_CASE("triple equivalence refuses bounds past the oracle bound") {
  CHECK_THROWS_AS(check_triple_equivalence(lookup("fibonacci"), 100, "canonical", std::nullopt, 50), Error);
}

TEST_CASE("a wrong rule system fails triple equivalence") {
  const RegistryEntry& fib = lookup("fibonacci");
  const RuleSystem wrong = parse_rule_system("a(0) = 1\na(2n) = a(n)\na(4n+1) = a(n)\na(4n+3) = a(2n+1)\n");
  const auto report = check_triple_equivalence(fib.coefficients, wrong, fib.base_sequence(), 256);
  CHECK_FALSE(report.passed());
  CHECK(report.counterexample->first == 3);
}
