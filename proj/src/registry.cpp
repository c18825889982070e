#include "runbinom/registry.hpp"

#include <algorithm>
#include <cctype>

#include <json.hpp>

#include "runbinom/error.hpp"

namespace runbinom {

namespace {

LinearRecurrence recurrence(std::vector<long> feedback, std::vector<long> initial) {
  LinearRecurrence rec;
  for (long d : feedback) rec.feedback.emplace_back(d);
  for (long c : initial) rec.initial.emplace_back(c);
  rec.validate();
  return rec;
}

constexpr std::string_view lucas_rules_head = R"(
a(0) = 1
a(2n) = a(n)
a(16n+1) = a(n)
a(16n+3) = 2*a(n)
a(16n+5) = a(n)
a(16n+7) = a(n)
)";

constexpr std::string_view lucas_rules_tail = R"(
a(16n+11) = 2*a(2n+1)
a(16n+13) = a(4n+3)
a(16n+15) = a(8n+7) + a(4n+3)
)";

std::vector<RegistryEntry> make_entries() {
  std::vector<RegistryEntry> out;

  out.push_back({
      "powers-of-2",
      {"gould", "pow2"},
      "Positive powers of 2; the transform is Gould's sequence 2^popcount(n)",
      {1, 0, 0, 1},
      recurrence({2, 0}, {1, 2}),
      parse_rule_system(R"(
        a(0) = 1
        a(2n) = a(n)
        a(4n+1) = 2*a(n)
        a(4n+3) = 2*a(2n+1)
      )"),
      "A000079",
      "A001316",
      {{1, 1, 1, 1}},
      {},
  });

  out.push_back({
      "fibonacci",
      {"fib"},
      "Fibonacci numbers 1, 1, 2, 3, 5, 8, ...",
      {1, -1, 0, 2},
      recurrence({1, 1}, {1, 1}),
      parse_rule_system(R"(
        a(0) = 1
        a(2n) = a(n)
        a(4n+1) = a(n)
        a(4n+3) = a(2n+1) + a(n)
      )"),
      "A000045",
      "A246028",
      {{0, 2, 1, -1}, {1, 3, 0, 2}, {1, 3, 1, 1}},
      {},
  });

  out.push_back({
      "one-plus-powers-of-2",
      {"pow2-plus-1"},
      "1 followed by the positive powers of 2: 1, 1, 2, 4, 8, ...",
      {1, 0, 0, 2},
      recurrence({2, 0}, {1, 1}),
      parse_rule_system(R"(
        a(0) = 1
        a(2n) = a(n)
        a(4n+1) = a(n)
        a(4n+3) = 2*a(2n+1)
      )"),
      "A011782",
      "A245195",
      {},
      {},
  });

  out.push_back({
      "one-then-twos",
      {"1222"},
      "1 followed by 2's: 1, 2, 2, 2, ...",
      {1, 2, 0, 2},
      recurrence({1, 0}, {1, 2}),
      parse_rule_system(R"(
        a(0) = 1
        a(2n) = a(n)
        a(4n+1) = 2*a(n)
        a(4n+3) = a(2n+1)
      )"),
      "A040000",
      std::nullopt,
      {{1, 2, 1, 0}},
      {},
  });

  out.push_back({
      "positive-integers",
      {"integers"},
      "Positive integers 1, 2, 3, 4, ...",
      {1, 1, 1, -1},
      recurrence({2, -1}, {1, 2}),
      parse_rule_system(R"(
        a(0) = 1
        a(2n) = a(n)
        a(4n+1) = 2*a(n)
        a(4n+3) = 2*a(2n+1) - a(n)
      )"),
      "A000027",
      "A106737",
      {{1, 1, 0, 2}, {1, 2, 0, 1}, {1, 2, 1, 1}},
      {},
  });

  out.push_back({
      "all-ones",
      {"ones"},
      "The all-ones sequence, a fixed point of the transform",
      {1, -1, 0, 1},
      recurrence({0, 1}, {1, 1}),
      parse_rule_system(R"(
        a(0) = 1
        a(2n) = a(n)
        a(4n+1) = a(n)
        a(4n+3) = a(n)
      )"),
      "A000012",
      "A000012",
      {},
      {},
  });

  out.push_back({
      "narayana",
      {"narayana-cows", "cows"},
      "Narayana's cows sequence b(n) = b(n-1) + b(n-3)",
      {1, -1, 0, 6},
      recurrence({1, 0, 1}, {1, 1, 1}),
      parse_rule_system(R"(
        a(0) = 1
        a(2n) = a(n)
        a(8n+1) = a(n)
        a(8n+3) = a(n)
        a(8n+5) = a(2n+1)
        a(8n+7) = a(n) + a(4n+3)
      )"),
      "A000930",
      std::nullopt,
      {},
      {},
  });

  out.push_back({
      "repeated-integers",
      {"double", "integers-repeated"},
      "Positive integers repeated: 1, 1, 2, 2, 3, 3, ...",
      {1, 3, 0, 6},
      recurrence({1, 1, -1}, {1, 1, 2}),
      parse_rule_system(R"(
        a(0) = 1
        a(2n) = a(n)
        a(8n+1) = a(n)
        a(8n+3) = 2*a(n)
        a(8n+5) = a(2n+1)
        a(8n+7) = a(4n+3) + a(2n+1) - a(n)
      )"),
      "A008619",
      std::nullopt,
      {},
      {},
  });

  {
    // The residue-9 rule follows from the order-4 transform rules with S_1 = 1.
    const std::string corrected = std::string(lucas_rules_head) + "a(16n+9) = a(2n+1)\n" +
                                  std::string(lucas_rules_tail);
    const std::string printed = std::string(lucas_rules_head) + "a(16n+9) = 2*a(2n+1)\n" +
                                std::string(lucas_rules_tail);
    out.push_back({
        "lucas",
        {"extended-lucas"},
        "Lucas numbers prepended with 1, 1: 1, 1, 2, 1, 3, 4, 7, 11, ...",
        {1, 2, 2, -1},
        recurrence({1, 1, 0, 0}, {1, 1, 2, 1}),
        parse_rule_system(corrected),
        std::nullopt,
        std::nullopt,
        {},
        {{"printed", "residue 9 rule as a(16n+9) = 2*a(2n+1)", parse_rule_system(printed)}},
    });
  }

  {
    std::vector<CoefficientVector> family;
    for (int m = 0; m <= 2; ++m) {
      const int s = 1 << m;
      if (m != 0) family.push_back({0, 3 * s, 0, s});
      family.push_back({0, 3 * s, 0, 2 * s});
    }
    out.push_back({
        "truncated-fibonacci",
        {"fibonacci-truncated"},
        "Fibonacci numbers without the leading 1: 1, 2, 3, 5, 8, ...",
        {0, 3, 0, 1},
        recurrence({1, 1}, {1, 2}),
        parse_rule_system(R"(
          a(0) = 1
          a(2n) = a(n)
          a(4n+1) = 2*a(n)
          a(4n+3) = a(2n+1) + a(n)
        )"),
        std::nullopt,
        "A245564",
        std::move(family),
        {},
    });
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

nlohmann::json to_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) {
    return x.convert_to<std::int64_t>();
  }
  return x.str();
}

nlohmann::json to_json(const CoefficientVector& c) { return {c.a1, c.a2, c.a3, c.a4}; }

}  // namespace

const RuleSystem& RegistryEntry::rules_variant(std::string_view variant) const {
  if (variant.empty() || variant == "canonical") return rules;
  for (const RuleVariant& v : variants) {
    if (v.name == variant) return v.rules;
  }
  throw Error(ErrorCode::not_found, "entry '" + name + "' has no rule variant '" + std::string(variant) + "'");
}

const std::vector<RegistryEntry>& builtin_entries() {
  static const std::vector<RegistryEntry> entries = make_entries();
  return entries;
}

const RegistryEntry& lookup(std::string_view name_or_anumber) {
  const std::string key = lower(name_or_anumber);
  for (const RegistryEntry& e : builtin_entries()) {
    if (lower(e.name) == key) return e;
    for (const std::string& alt : e.other_names) {
      if (lower(alt) == key) return e;
    }
    if ((e.oeis_sequence && lower(*e.oeis_sequence) == key) ||
        (e.oeis_transform && lower(*e.oeis_transform) == key)) {
      return e;
    }
  }
  throw Error(ErrorCode::not_found, "no registry entry named '" + std::string(name_or_anumber) + "'");
}

const RegistryEntry* find_by_coefficients(const CoefficientVector& c) {
  for (const RegistryEntry& e : builtin_entries()) {
    if (e.coefficients == c) return &e;
    if (std::find(e.aliases.begin(), e.aliases.end(), c) != e.aliases.end()) return &e;
  }
  return nullptr;
}

std::string export_catalog() {
  std::string out;
  for (const RegistryEntry& e : builtin_entries()) {
    nlohmann::json record;
    record["name"] = e.name;
    record["coefficients"] = to_json(e.coefficients);
    nlohmann::json initial = nlohmann::json::array();
    for (const BigInt& c : e.base.initial) initial.push_back(to_json(c));
    nlohmann::json feedback = nlohmann::json::array();
    for (const BigInt& d : e.base.feedback) feedback.push_back(to_json(d));
    record["base_initial"] = initial;
    record["base_feedback"] = feedback;
    record["rules"] = to_text(e.rules);
    record["oeis_sequence"] = e.oeis_sequence ? nlohmann::json(*e.oeis_sequence) : nlohmann::json(nullptr);
    record["oeis_transform"] = e.oeis_transform ? nlohmann::json(*e.oeis_transform) : nlohmann::json(nullptr);
    nlohmann::json aliases = nlohmann::json::array();
    for (const CoefficientVector& a : e.aliases) aliases.push_back(to_json(a));
    record["aliases"] = aliases;
    out += record.dump() + "\n";
  }
  return out;
}

}  // namespace runbinom
