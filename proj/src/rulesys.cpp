#include "runbinom/rulesys.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <stack>

#include "runbinom/error.hpp"

namespace runbinom {

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::invalid_rule_system, what);
}

bool is_power_of_two(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

unsigned log2_exact(std::uint64_t x) {
  unsigned e = 0;
  while ((std::uint64_t{1} << e) < x) ++e;
  return e;
}

}  // namespace

RuleSystem::RuleSystem(std::vector<ResidueRule> rules, std::map<std::uint64_t, BigInt> base_values)
    : rules_(std::move(rules)), base_values_(std::move(base_values)) {
  if (!base_values_.contains(0)) invalid("rule system needs a base value for a(0)");
  if (rules_.empty()) invalid("rule system has no rules");

  for (const ResidueRule& rule : rules_) {
    const std::string where = "rule " + to_text(rule);
    if (rule.modulus_exp < 1 || rule.modulus_exp > max_modulus_exp) {
      invalid(where + ": modulus must be 2^m with 1 <= m <= " + std::to_string(max_modulus_exp));
    }
    if (rule.residue >= rule.modulus()) invalid(where + ": residue not below modulus");
    const bool covers_q0 = !base_values_.contains(rule.residue);
    for (const RuleTerm& term : rule.terms) {
      if (term.scale_exp >= rule.modulus_exp) invalid(where + ": child scale must be below the modulus");
      if (term.offset > rule.residue) invalid(where + ": child offset exceeds the residue");
      if (covers_q0 && term.offset == rule.residue) {
        invalid(where + ": refers to itself at q = 0; add a base value for a(" +
                std::to_string(rule.residue) + ")");
      }
    }
    table_exp_ = std::max(table_exp_, rule.modulus_exp);
  }

  constexpr std::size_t none = static_cast<std::size_t>(-1);
  table_.assign(std::size_t{1} << table_exp_, none);
  for (std::uint64_t r = 0; r < table_.size(); ++r) {
    std::size_t best = none;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      const ResidueRule& rule = rules_[i];
      if ((r & (rule.modulus() - 1)) != rule.residue) continue;
      if (best == none || rule.modulus_exp > rules_[best].modulus_exp) {
        best = i;
      } else if (rule.modulus_exp == rules_[best].modulus_exp) {
        invalid("duplicate rules for residue " + std::to_string(rule.residue) + " mod " +
                std::to_string(rule.modulus()));
      }
    }
    if (best == none) {
      invalid("no rule covers indices congruent to " + std::to_string(r) + " mod " +
              std::to_string(table_.size()));
    }
    table_[r] = best;
  }
}

const ResidueRule& RuleSystem::rule_for(const BigInt& n) const {
  const BigInt low = n & BigInt((std::uint64_t{1} << table_exp_) - 1);
  return rules_[table_[static_cast<std::size_t>(low.convert_to<std::uint64_t>())]];
}

// ---------------------------------------------------------------------------
// Text form

namespace {

class Cursor {
 public:
  Cursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  bool done() const { return pos_ == text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  bool accept(char ch) {
    if (peek() != ch) return false;
    ++pos_;
    return true;
  }
  void expect(char ch) {
    if (!accept(ch)) fail(std::string("expected '") + ch + "'");
  }
  bool at_digit() const { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }
  std::string_view digits() {
    const std::size_t start = pos_;
    while (at_digit()) ++pos_;
    if (start == pos_) fail("expected a number");
    return text_.substr(start, pos_ - start);
  }
  std::uint64_t number() {
    const std::string_view d = digits();
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(d.data(), d.data() + d.size(), value);
    if (ec != std::errc()) fail("number out of range");
    return value;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::parse_error, "line " + std::to_string(line_) + ": " + what + " in '" +
                                            std::string(text_) + "'");
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

struct Affine {
  std::uint64_t scale = 1;
  std::uint64_t offset = 0;
  bool has_n = false;
};

// Inside a(...): "<s>n+<o>", "<s>n", "n+<o>", "n", or a plain integer.
Affine parse_affine(Cursor& cur) {
  Affine a;
  if (cur.at_digit()) a.scale = cur.number();
  if (cur.accept('n')) {
    a.has_n = true;
    if (cur.accept('+')) a.offset = cur.number();
  } else {
    a.offset = a.scale;
    a.scale = 0;
  }
  return a;
}

std::string strip(std::string_view line) {
  std::string out;
  for (char ch : line) {
    if (ch == '#') break;
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  }
  return out;
}

}  // namespace

RuleSystem parse_rule_system(std::string_view text) {
  std::vector<ResidueRule> rules;
  std::map<std::uint64_t, BigInt> base;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip(raw);
    if (line.empty()) continue;
    Cursor cur(line, line_no);
    cur.expect('a');
    cur.expect('(');
    const Affine lhs = parse_affine(cur);
    cur.expect(')');
    cur.expect('=');
    if (!lhs.has_n) {
      const bool negative = cur.accept('-');
      BigInt value = parse_bigint(cur.digits());
      if (!cur.done()) cur.fail("trailing characters after base value");
      if (negative) value = -value;
      if (!base.emplace(lhs.offset, value).second) {
        cur.fail("duplicate base value for a(" + std::to_string(lhs.offset) + ")");
      }
      continue;
    }
    if (!is_power_of_two(lhs.scale) || lhs.scale < 2) cur.fail("rule modulus must be a power of two >= 2");
    ResidueRule rule;
    rule.modulus_exp = log2_exact(lhs.scale);
    rule.residue = lhs.offset;
    if (cur.peek() == '0') {
      cur.number();
      if (!cur.done()) cur.fail("trailing characters after 0");
    }
    bool first = true;
    while (!cur.done()) {
      bool negative = false;
      if (cur.accept('-')) {
        negative = true;
      } else if (!cur.accept('+') && !first) {
        cur.fail("expected '+' or '-' between terms");
      }
      first = false;
      BigInt coeff = 1;
      if (cur.at_digit()) {
        coeff = parse_bigint(cur.digits());
        cur.accept('*');
      }
      cur.expect('a');
      cur.expect('(');
      const Affine child = parse_affine(cur);
      cur.expect(')');
      if (!child.has_n) cur.fail("rule terms must depend on n");
      if (!is_power_of_two(child.scale)) cur.fail("child scale must be a power of two");
      rule.terms.push_back({negative ? BigInt(-coeff) : coeff, log2_exact(child.scale), child.offset});
    }
    rules.push_back(std::move(rule));
  }
  return RuleSystem(std::move(rules), std::move(base));
}

std::string to_text(const ResidueRule& rule) {
  auto affine = [](std::uint64_t scale, std::uint64_t offset) {
    std::string s = scale == 1 ? "n" : std::to_string(scale) + "n";
    if (offset != 0) s += "+" + std::to_string(offset);
    return s;
  };
  std::string out = "a(" + affine(rule.modulus(), rule.residue) + ") =";
  if (rule.terms.empty()) return out + " 0";
  bool first = true;
  for (const RuleTerm& t : rule.terms) {
    const bool negative = t.coeff < 0;
    const BigInt magnitude = negative ? BigInt(-t.coeff) : t.coeff;
    if (first) {
      out += negative ? " -" : " ";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (magnitude != 1) out += magnitude.str() + "*";
    out += "a(" + affine(std::uint64_t{1} << t.scale_exp, t.offset) + ")";
  }
  return out;
}

std::string to_text(const RuleSystem& system) {
  std::string out;
  for (const auto& [n, v] : system.base_values()) {
    out += "a(" + std::to_string(n) + ") = " + v.str() + "\n";
  }
  for (const ResidueRule& rule : system.rules()) out += to_text(rule) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

RuleEvaluator::RuleEvaluator(RuleSystem system) : system_(std::move(system)) {}

void RuleEvaluator::set_edge_observer(EdgeObserver observer) {
  std::lock_guard lock(mutex_);
  observer_ = std::move(observer);
}

std::size_t RuleEvaluator::cache_size() const {
  std::lock_guard lock(mutex_);
  return memo_.size();
}

BigInt RuleEvaluator::eval(const BigInt& n) {
  if (n < 0) throw Error(ErrorCode::uncovered_index, "negative index " + n.str());
  std::lock_guard lock(mutex_);

  // Explicit stack: a 10^4-bit argument would otherwise recurse that deep.
  std::stack<BigInt> pending;
  pending.push(n);
  while (!pending.empty()) {
    const BigInt cur = pending.top();
    if (memo_.contains(cur)) {
      pending.pop();
      continue;
    }
    if (cur <= std::numeric_limits<std::uint64_t>::max()) {
      const auto base = system_.base_values().find(cur.convert_to<std::uint64_t>());
      if (base != system_.base_values().end()) {
        if (base->second < 0) {
          throw Error(ErrorCode::negative_value, "a(" + cur.str() + ") = " + base->second.str());
        }
        memo_.emplace(cur, base->second);
        pending.pop();
        continue;
      }
    }
    const ResidueRule& rule = system_.rule_for(cur);
    const BigInt q = cur >> rule.modulus_exp;
    bool ready = true;
    BigInt value = 0;
    for (const RuleTerm& term : rule.terms) {
      const BigInt child = (q << term.scale_exp) + term.offset;
      if (observer_) observer_(cur, child);
      if (child >= cur) {
        throw Error(ErrorCode::invalid_rule_system,
                    "a(" + cur.str() + ") depends on a(" + child.str() + ")");
      }
      const auto hit = memo_.find(child);
      if (hit == memo_.end()) {
        pending.push(child);
        ready = false;
      } else if (ready) {
        value += term.coeff * hit->second;
      }
    }
    if (!ready) continue;
    if (value < 0) {
      throw Error(ErrorCode::negative_value,
                  "a(" + cur.str() + ") = " + value.str() + " by rule " + to_text(rule));
    }
    memo_.emplace(cur, std::move(value));
    pending.pop();
  }
  return memo_.at(n);
}

std::vector<BigInt> RuleEvaluator::first_terms(std::size_t count) {
  std::vector<BigInt> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(eval(BigInt(i)));
  return out;
}

BigInt eval(const RuleSystem& system, const BigInt& n) { return RuleEvaluator(system).eval(n); }

std::vector<BigInt> first_terms(const RuleSystem& system, std::size_t count) {
  return RuleEvaluator(system).first_terms(count);
}

}  // namespace runbinom
