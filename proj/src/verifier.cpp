#include "runbinom/verifier.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "runbinom/error.hpp"

namespace runbinom {

namespace detail {
extern const std::string_view embedded_lemma_corpus;
}

namespace {

std::string affine_text(std::uint64_t scale, std::uint64_t offset, char var) {
  std::string s = scale == 1 ? std::string(1, var) : std::to_string(scale) + var;
  if (offset != 0) s += "+" + std::to_string(offset);
  return s;
}

std::string pair_text(const AffinePair& p) {
  return "F(" + affine_text(p.n_scale, p.n_offset, 'n') + "," + affine_text(p.k_scale, p.k_offset, 'k') + ")";
}

[[noreturn]] void corpus_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::parse_error, "corpus line " + std::to_string(line) + ": " + what);
}

std::uint64_t parse_u64(std::string_view s, std::size_t line) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    corpus_error(line, "bad number '" + std::string(s) + "'");
  }
  return value;
}

// "<s><var>+<o>" with optional scale and offset.
std::pair<std::uint64_t, std::uint64_t> parse_affine(std::string_view s, char var, std::size_t line) {
  const auto at = s.find(var);
  if (at == std::string_view::npos) corpus_error(line, "expected '" + std::string(1, var) + "' in '" + std::string(s) + "'");
  const std::uint64_t scale = at == 0 ? 1 : parse_u64(s.substr(0, at), line);
  std::uint64_t offset = 0;
  if (at + 1 < s.size()) {
    if (s[at + 1] != '+') corpus_error(line, "expected '+' in '" + std::string(s) + "'");
    offset = parse_u64(s.substr(at + 2), line);
  }
  if (scale == 0 || (scale & (scale - 1)) != 0) corpus_error(line, "multiplier must be a power of two");
  if (offset >= scale && scale != 1) corpus_error(line, "offset must be below the multiplier");
  return {scale, offset};
}

// Consumes "F(...,...)" from the front of s.
AffinePair parse_pair(std::string_view& s, std::size_t line) {
  if (!s.starts_with("F(")) corpus_error(line, "expected 'F('");
  const auto close = s.find(')');
  const auto comma = s.find(',');
  if (close == std::string_view::npos || comma == std::string_view::npos || comma > close) {
    corpus_error(line, "malformed F(...)");
  }
  const auto [ns, no] = parse_affine(s.substr(2, comma - 2), 'n', line);
  const auto [ks, ko] = parse_affine(s.substr(comma + 1, close - comma - 1), 'k', line);
  s.remove_prefix(close + 1);
  return {ns, no, ks, ko};
}

std::vector<std::pair<std::string, std::string>> parse_attributes(std::string_view s, std::size_t line) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t i = 0;
  while (true) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i == s.size()) break;
    const auto eq = s.find('=', i);
    if (eq == std::string_view::npos) corpus_error(line, "attribute without '='");
    std::string key(s.substr(i, eq - i));
    i = eq + 1;
    std::string value;
    if (i < s.size() && s[i] == '"') {
      const auto end = s.find('"', i + 1);
      if (end == std::string_view::npos) corpus_error(line, "unterminated quote");
      value = std::string(s.substr(i + 1, end - i - 1));
      i = end + 1;
    } else {
      const std::size_t start = i;
      while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
      value = std::string(s.substr(start, i - start));
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

}  // namespace

std::string to_text(const IdentityStatement& stmt) {
  std::string out = pair_text(stmt.lhs) + " = " + (stmt.rhs ? pair_text(*stmt.rhs) : std::string("0"));
  out += " @ coeffs=" + to_string(stmt.coefficients);
  if (stmt.domain == StatementDomain::k_greater_than_n) out += " when=\"k>n\"";
  return out;
}

std::string to_text(const VerificationReport& report) {
  std::string out = report.passed() ? "PASS" : "FAIL";
  out += " [" + report.statement + "] bound=" + std::to_string(report.bound) +
         " checked=" + std::to_string(report.checked_count);
  if (report.counterexample) {
    out += " counterexample=(" + std::to_string(report.counterexample->first) + "," +
           std::to_string(report.counterexample->second) + ")";
  }
  if (!report.detail.empty()) out += " " + report.detail;
  if (!report.as_expected()) out += " UNEXPECTED";
  return out;
}

VerificationReport check_identity(const IdentityStatement& stmt, std::uint64_t bound) {
  VerificationReport report;
  report.statement = to_text(stmt);
  report.bound = bound;
  report.expect_pass = stmt.expect_pass;
  const CoefficientVector& c = stmt.coefficients;
  const AffinePair& l = stmt.lhs;
  for (std::uint64_t n = 0; n <= bound; ++n) {
    for (std::uint64_t k = 0; k <= bound; ++k) {
      if (stmt.domain == StatementDomain::k_greater_than_n && k <= n) continue;
      ++report.checked_count;
      const Parity left = f_value(c, l.n_scale * n + l.n_offset, l.k_scale * k + l.k_offset);
      Parity right = Parity::zero;
      if (stmt.rhs) {
        const AffinePair& r = *stmt.rhs;
        right = f_value(c, r.n_scale * n + r.n_offset, r.k_scale * k + r.k_offset);
      }
      if (left != right) {
        report.result = Outcome::fail;
        report.counterexample = {n, k};
        report.detail = "lhs=" + std::to_string(to_int(left)) + " rhs=" + std::to_string(to_int(right));
        return report;
      }
    }
  }
  return report;
}

std::optional<bool> side_condition_holds(std::string_view condition, const CoefficientVector& c) {
  if (condition == "a3-01-a1-1-or-a3-0") {
    return (c.a3 == 0 || c.a3 == 1) && (c.a1 == 1 || c.a3 == 0);
  }
  const auto first = condition.find(':');
  const auto second = condition.find(':', first == std::string_view::npos ? first : first + 1);
  if (first == std::string_view::npos || second == std::string_view::npos) {
    throw Error(ErrorCode::parse_error, "unknown side condition '" + std::string(condition) + "'");
  }
  const std::string_view kind = condition.substr(0, first);
  const std::uint64_t mod = parse_u64(condition.substr(first + 1, second - first - 1), 0);
  const std::uint64_t mul = parse_u64(condition.substr(second + 1), 0);
  if ((kind != "clear" && kind != "set") || mod == 0 || (mod & (mod - 1)) != 0) {
    throw Error(ErrorCode::parse_error, "unknown side condition '" + std::string(condition) + "'");
  }
  if (c.a1 < 0 || c.a3 < 0) return std::nullopt;
  const std::uint64_t m1 = mul * static_cast<std::uint64_t>(c.a1);
  const std::uint64_t m3 = mul * static_cast<std::uint64_t>(c.a3);
  const bool low_bits_clear = (and_not(m3, m1) & (mod - 1)) == 0;
  if (kind == "set") return !low_bits_clear;
  return low_bits_clear && m1 < mod && m3 < mod;
}

std::vector<IdentityStatement> parse_corpus(std::string_view text) {
  std::vector<IdentityStatement> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    // '#' only starts a comment outside the attribute section's quotes; anchors never contain it.
    std::string_view line = std::string_view(raw).substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    if (line.empty()) continue;
    const auto at = line.find('@');
    if (at == std::string_view::npos) corpus_error(line_no, "missing '@' attributes");

    std::string identity;
    for (char ch : line.substr(0, at)) {
      if (!std::isspace(static_cast<unsigned char>(ch))) identity.push_back(ch);
    }
    std::string_view s = identity;
    IdentityStatement stmt;
    stmt.lhs = parse_pair(s, line_no);
    if (!s.starts_with("=")) corpus_error(line_no, "expected '='");
    s.remove_prefix(1);
    if (s == "0") {
      s.remove_prefix(1);
    } else {
      stmt.rhs = parse_pair(s, line_no);
    }
    if (!s.empty()) corpus_error(line_no, "trailing text '" + std::string(s) + "'");

    std::vector<CoefficientVector> coeff_list;
    bool have_coeffs = false;
    bool have_expect = false;
    for (const auto& [key, value] : parse_attributes(line.substr(at + 1), line_no)) {
      if (key == "coeffs") {
        have_coeffs = true;
        if (value == "*") {
          stmt.universal = true;
          for (const RegistryEntry& e : builtin_entries()) coeff_list.push_back(e.coefficients);
        } else {
          try {
            coeff_list.push_back(parse_coefficients(value));
          } catch (const Error& e) {
            corpus_error(line_no, e.what());
          }
        }
      } else if (key == "expect") {
        have_expect = true;
        if (value != "pass" && value != "fail") corpus_error(line_no, "expect must be pass or fail");
        stmt.expect_pass = value == "pass";
      } else if (key == "ref") {
        stmt.ref = value;
      } else if (key == "cond") {
        stmt.condition = value;
      } else if (key == "when") {
        if (value != "k>n") corpus_error(line_no, "only when=\"k>n\" is supported");
        stmt.domain = StatementDomain::k_greater_than_n;
      } else {
        corpus_error(line_no, "unknown attribute '" + key + "'");
      }
    }
    if (!have_coeffs || !have_expect || stmt.ref.empty()) {
      corpus_error(line_no, "coeffs, expect and ref are required");
    }
    for (const CoefficientVector& c : coeff_list) {
      IdentityStatement inst = stmt;
      inst.coefficients = c;
      out.push_back(std::move(inst));
    }
  }
  return out;
}

std::string_view builtin_corpus_text() { return detail::embedded_lemma_corpus; }

const std::vector<IdentityStatement>& builtin_corpus() {
  static const std::vector<IdentityStatement> corpus = parse_corpus(builtin_corpus_text());
  return corpus;
}

std::vector<VerificationReport> check_lemma_corpus(std::uint64_t bound) {
  return check_lemma_corpus(builtin_corpus(), bound);
}

std::vector<VerificationReport> check_lemma_corpus(const std::vector<IdentityStatement>& corpus,
                                                   std::uint64_t bound) {
  std::vector<VerificationReport> reports;
  reports.reserve(corpus.size());
  for (const IdentityStatement& stmt : corpus) {
    VerificationReport r = check_identity(stmt, bound);
    r.statement += " ref=\"" + stmt.ref + "\"";
    reports.push_back(std::move(r));
  }
  return reports;
}

VerificationReport check_triple_equivalence(const CoefficientVector& c, const RuleSystem& rules,
                                            const BaseSequence& base, std::uint64_t bound,
                                            std::uint64_t oracle_bound) {
  if (bound > oracle_bound) {
    throw Error(ErrorCode::bound_exceeded, "bound " + std::to_string(bound) + " exceeds the oracle bound " +
                                               std::to_string(oracle_bound));
  }
  VerificationReport report;
  report.statement = "sum_direct = rules = runs @ coeffs=" + to_string(c);
  report.bound = bound;
  RuleEvaluator evaluator(rules);
  for (std::uint64_t n = 0; n <= bound; ++n) {
    ++report.checked_count;
    const BigInt direct = sum_direct(c, n, oracle_bound);
    const BigInt runs = rlt_by_runs(base, n);
    BigInt by_rules;
    try {
      by_rules = evaluator.eval(n);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::negative_value) throw;
      report.result = Outcome::fail;
      report.counterexample = {n, 0};
      report.detail = e.what();
      return report;
    }
    if (direct != by_rules || direct != runs) {
      report.result = Outcome::fail;
      report.counterexample = {n, 0};
      report.detail = "sum_direct=" + direct.str() + " rules=" + by_rules.str() + " runs=" + runs.str();
      return report;
    }
  }
  return report;
}

VerificationReport check_triple_equivalence(const RegistryEntry& entry, std::uint64_t bound,
                                            std::string_view variant,
                                            std::optional<CoefficientVector> coefficients,
                                            std::uint64_t oracle_bound) {
  const CoefficientVector c = coefficients.value_or(entry.coefficients);
  VerificationReport report = check_triple_equivalence(c, entry.rules_variant(variant),
                                                       entry.base_sequence(), bound, oracle_bound);
  report.statement = entry.name + "[" + std::string(variant.empty() ? "canonical" : variant) + "] " +
                     report.statement;
  // Variants are kept as known-false forms.
  report.expect_pass = variant.empty() || variant == "canonical";
  return report;
}

}  // namespace runbinom
