#include <doctest.h>

#include <random>
#include <thread>

#include "runbinom/error.hpp"
#include "runbinom/registry.hpp"
#include "runbinom/rulesys.hpp"
#include "runbinom/transform.hpp"

using namespace runbinom;

namespace {

const char* const fibonacci_text = R"(
# Fibonacci run length transform
a(0) = 1
a(2n) = a(n)
a(4n+1) = a(n)
a(4n+3) = a(2n+1) + a(n)
)";

ErrorCode code_of(const char* text) {
  try {
    parse_rule_system(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error for: " << text);
  return ErrorCode::usage;
}

std::vector<BigInt> to_big(std::initializer_list<int> values) { return {values.begin(), values.end()}; }

}  // namespace

TEST_CASE("parse and evaluate a small system") {
  const RuleSystem rs = parse_rule_system(fibonacci_text);
  CHECK(rs.rules().size() == 3);
  CHECK(rs.base_values().at(0) == 1);
  CHECK(first_terms(rs, 16) == to_big({1, 1, 1, 2, 1, 1, 2, 3, 1, 1, 1, 2, 2, 2, 3, 5}));
  CHECK(eval(rs, 463) == 15);
}

TEST_CASE("text form is whitespace-insensitive and accepts 2a(...) coefficients") {
  const RuleSystem a = parse_rule_system("a(0)=1\na(2n)=a(n)\na(4n+1)=2a(n)\na(4n+3)=2*a(2n+1)-a(n)\n");
  const RuleSystem b = parse_rule_system(" a( 0 ) = 1\n a(2n) = a(n) \n a(4n + 1) = 2 * a(n)\na(4n+3) = 2a(2n+1) - a(n)");
  CHECK(first_terms(a, 64) == first_terms(b, 64));
  CHECK(to_text(a) == "a(0) = 1\na(2n) = a(n)\na(4n+1) = 2*a(n)\na(4n+3) = 2*a(2n+1) - a(n)\n");
}

TEST_CASE("zero right-hand side") {
  const RuleSystem rs = parse_rule_system("a(0) = 1\na(2n) = a(n)\na(2n+1) = 0\n");
  CHECK(first_terms(rs, 5) == to_big({1, 0, 0, 0, 0}));
}

TEST_CASE("text round trip for every catalog system") {
  for (const RegistryEntry& e : builtin_entries()) {
    const std::string text = to_text(e.rules);
    const RuleSystem again = parse_rule_system(text);
    CHECK(to_text(again) == text);
    CHECK(first_terms(again, 200) == first_terms(e.rules, 200));
  }
}

TEST_CASE("text round trip for random systems") {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 300; ++iter) {
    const unsigned m = 1 + rng() % 4;
    std::vector<ResidueRule> rules{{1, 0, {{BigInt(1), 0, 0}}}};
    for (std::uint64_t r = 1; r < (1u << m); r += 2) {
      ResidueRule rule{m, r, {}};
      for (unsigned j = 0; j < m; ++j) {
        const std::uint64_t offset = (std::uint64_t{1} << j) - 1;
        if (offset >= r || rng() % 2) continue;
        rule.terms.push_back({BigInt(static_cast<int>(rng() % 7) - 3), j, offset});
      }
      std::erase_if(rule.terms, [](const RuleTerm& t) { return t.coeff == 0; });
      rules.push_back(rule);
    }
    const RuleSystem rs(rules, {{0, BigInt(1 + rng() % 5)}});
    const RuleSystem again = parse_rule_system(to_text(rs));
    REQUIRE(again.rules() == rs.rules());
    REQUIRE(again.base_values() == rs.base_values());
  }
}

TEST_CASE("malformed text is a parse error") {
  CHECK(code_of("a(0) = 1\na(3n+1) = a(n)\n") == ErrorCode::parse_error);
  CHECK(code_of("a(0) = 1\na(2n) = b(n)\n") == ErrorCode::parse_error);
  CHECK(code_of("a(0) = 1\na(2n = a(n)\n") == ErrorCode::parse_error);
}

TEST_CASE("invalid systems are rejected") {
  CHECK(code_of("a(2n) = a(n)\na(2n+1) = a(n)\n") == ErrorCode::invalid_rule_system);  // no a(0)
  CHECK(code_of("a(0) = 1\na(2n) = a(n)\n") == ErrorCode::invalid_rule_system);        // odd uncovered
  CHECK(code_of("a(0) = 1\na(2n) = a(n)\na(2n+1) = a(n)\na(2n+1) = 2*a(n)\n") ==
        ErrorCode::invalid_rule_system);                                                // duplicate
  CHECK(code_of("a(0) = 1\na(2n) = a(n)\na(2n+1) = a(2n+1)\n") == ErrorCode::invalid_rule_system);
  CHECK(code_of("a(0) = 1\na(2n) = a(n)\na(4n+1) = a(4n+1)\na(4n+3) = a(n)\n") ==
        ErrorCode::invalid_rule_system);  // child scale not below modulus
  CHECK(code_of("a(0) = 1\na(2n) = a(n)\na(2n+1) = a(n+3)\n") == ErrorCode::invalid_rule_system);
}

TEST_CASE("longest modulus wins") {
  const RuleSystem rs = parse_rule_system("a(0) = 1\na(2n) = a(n)\na(2n+1) = 2*a(n)\na(8n+7) = 5*a(n)\n");
  CHECK(eval(rs, 3) == 4);
  CHECK(eval(rs, 7) == 5);
  CHECK(eval(rs, 15) == 10);
}

TEST_CASE("extra base values override rules") {
  const RuleSystem rs =
      parse_rule_system("a(0) = 1\na(1) = 7\na(2n) = a(n)\na(4n+1) = a(2n+1) + a(n)\na(4n+3) = a(n)\n");
  CHECK(eval(rs, 1) == 7);
  CHECK(eval(rs, 3) == 1);
  CHECK(eval(rs, 5) == 8);
  // Without a(1) as a base value the same rule would refer to itself.
  CHECK(code_of("a(0) = 1\na(2n) = a(n)\na(4n+1) = a(2n+1) + a(n)\na(4n+3) = a(n)\n") ==
        ErrorCode::invalid_rule_system);
}

TEST_CASE("negative values are reported") {
  const RuleSystem rs = parse_rule_system("a(0) = 1\na(2n) = a(n)\na(2n+1) = -a(n)\n");
  try {
    eval(rs, 1);
    FAIL("expected negative_value");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::negative_value);
  }
}

TEST_CASE("every expanded edge goes to a strictly smaller index") {
  for (const RegistryEntry& e : builtin_entries()) {
    RuleEvaluator evaluator(e.rules);
    std::size_t edges = 0;
    evaluator.set_edge_observer([&](const BigInt& parent, const BigInt& child) {
      ++edges;
      REQUIRE(child < parent);
    });
    evaluator.eval((BigInt(1) << 300) - 12345);
    CHECK(edges > 0);
  }
}

TEST_CASE("evaluation of a 2000-bit index stays small") {
  RuleEvaluator evaluator(lookup("fibonacci").rules);
  const BigInt n = (BigInt(1) << 2000) / 3;  // 1010...
  const BigInt value = evaluator.eval(n);
  CHECK(value == rlt_by_runs(lookup("fibonacci").base_sequence(), n));
  CHECK(evaluator.cache_size() < 20000);
}

TEST_CASE("concurrent evaluation is deterministic") {
  const RegistryEntry& e = lookup("narayana");
  const auto expected = first_terms(e.rules, 2048);
  RuleEvaluator shared(e.rules);
  std::vector<std::vector<BigInt>> results(4);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < results.size(); ++t) {
    results[t].resize(2048);
    threads.emplace_back([&, t] {
      for (std::uint64_t n = 0; n < 2048; ++n) {
        const std::uint64_t i = t % 2 == 0 ? n : 2047 - n;
        results[t][i] = shared.eval(i);
      }
    });
  }
  for (auto& th : threads) th.join();
  for (const auto& r : results) CHECK(r == expected);
}
