#include "runbinom/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "runbinom/error.hpp"
#include "runbinom/oeis.hpp"
#include "runbinom/parity.hpp"
#include "runbinom/registry.hpp"
#include "runbinom/rulesys.hpp"
#include "runbinom/transform.hpp"
#include "runbinom/verifier.hpp"

namespace runbinom::cli {

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::io_error:
    case ErrorCode::network_error:
    case ErrorCode::offline_miss:
    case ErrorCode::gap_error:
      return exit_io;
    case ErrorCode::negative_value:
    case ErrorCode::uncovered_index:
      return exit_failed;
    default:
      return exit_usage;
  }
}

std::uint64_t to_u64(const BigInt& n, std::string_view what) {
  if (n < 0 || n > std::numeric_limits<std::uint64_t>::max()) {
    throw Error(ErrorCode::usage, std::string(what) + " out of range");
  }
  return n.convert_to<std::uint64_t>();
}

BigInt parse_natural(const std::string& text, std::string_view what) {
  BigInt n;
  try {
    n = parse_bigint(text);
  } catch (const Error&) {
    throw Error(ErrorCode::usage, std::string(what) + " must be an integer, got '" + text + "'");
  }
  if (n < 0) throw Error(ErrorCode::usage, std::string(what) + " must be non-negative");
  return n;
}

CoefficientVector coefficients_arg(const std::string& text) {
  try {
    return parse_coefficients(text);
  } catch (const Error& e) {
    throw Error(ErrorCode::usage, e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot read " + path);
  std::ostringstream bytes;
  bytes << in.rdbuf();
  return bytes.str();
}

void print_bfile_lines(std::ostream& out, const BigInt& start, const std::vector<BigInt>& values) {
  BigInt n = start;
  for (const BigInt& v : values) {
    out << to_string(n) << ' ' << to_string(v) << '\n';
    ++n;
  }
}

// A base sequence file is either a recurrence
//   feedback: d0 d1 ...
//   initial:  s0 s1 ...
// or a plain whitespace-separated list of terms S_0 S_1 ...
BaseSequence load_base(const std::string& name_or_path) {
  if (!std::filesystem::exists(name_or_path)) return lookup(name_or_path).base_sequence();
  std::istringstream text(read_file(name_or_path));
  LinearRecurrence rec;
  std::vector<BigInt> plain;
  std::string line;
  while (std::getline(text, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::vector<BigInt>* target = &plain;
    if (const auto colon = line.find(':'); colon != std::string::npos) {
      const std::string key = line.substr(0, colon);
      if (key.find("feedback") != std::string::npos) {
        target = &rec.feedback;
      } else if (key.find("initial") != std::string::npos) {
        target = &rec.initial;
      } else {
        throw Error(ErrorCode::usage, "unknown key '" + key + "' in " + name_or_path);
      }
      line.erase(0, colon + 1);
    }
    std::istringstream words(line);
    std::string word;
    while (words >> word) {
      try {
        target->push_back(parse_bigint(word));
      } catch (const Error&) {
        throw Error(ErrorCode::usage, "bad number '" + word + "' in " + name_or_path);
      }
    }
  }
  if (!rec.feedback.empty() || !rec.initial.empty()) {
    if (!plain.empty()) throw Error(ErrorCode::usage, name_or_path + " mixes a recurrence with plain terms");
    return BaseSequence(std::move(rec));
  }
  return BaseSequence::explicit_terms(std::move(plain));
}

struct Options {
  std::uint64_t oracle_bound = default_oracle_bound;

  std::string n_text;
  std::string k_text;
  std::string coeffs;
  std::string entry;
  std::string variant = "canonical";
  std::string method = "rules";
  std::string start = "0";
  std::size_t count = 0;
  std::string base;
  bool corpus = false;
  std::uint64_t bound = 0;
  unsigned max_mod = 0;
  std::optional<std::uint64_t> sample;
  std::string anumber;
  bool offline = false;
  std::string cache_dir;
  std::optional<std::int64_t> offset;
  std::size_t rows = 0;
  std::string format = "ascii";
};

int cmd_parity(const Options& o, std::ostream& out) {
  out << to_int(binom_parity(parse_natural(o.n_text, "n"), parse_natural(o.k_text, "k"))) << '\n';
  return exit_ok;
}

int cmd_f(const Options& o, std::ostream& out) {
  const CoefficientVector c = coefficients_arg(o.coeffs);
  out << to_int(f_value(c, parse_natural(o.n_text, "n"), parse_natural(o.k_text, "k"))) << '\n';
  return exit_ok;
}

int cmd_seq(const Options& o, std::ostream& out) {
  if (o.entry.empty() == o.coeffs.empty()) throw Error(ErrorCode::usage, "give exactly one of --entry or --coeffs");
  const RegistryEntry* entry = nullptr;
  CoefficientVector c;
  if (!o.entry.empty()) {
    entry = &lookup(o.entry);
    c = entry->coefficients;
  } else {
    c = coefficients_arg(o.coeffs);
    entry = find_by_coefficients(c);
  }
  const BigInt start = parse_natural(o.start, "--start");
  std::vector<BigInt> values;
  values.reserve(o.count);
  if (o.method == "oracle") {
    const std::uint64_t first = to_u64(start, "--start");
    for (std::size_t i = 0; i < o.count; ++i) values.emplace_back(sum_direct(c, first + i, o.oracle_bound));
  } else if (entry == nullptr) {
    throw Error(ErrorCode::usage, "no catalog entry for coefficients " + to_string(c) + "; use --method oracle");
  } else if (o.method == "rules") {
    RuleEvaluator evaluator(entry->rules_variant(o.variant));
    for (std::size_t i = 0; i < o.count; ++i) values.push_back(evaluator.eval(start + i));
  } else {
    const BaseSequence base = entry->base_sequence();
    for (std::size_t i = 0; i < o.count; ++i) values.push_back(rlt_by_runs(base, start + i));
  }
  print_bfile_lines(out, start, values);
  return exit_ok;
}

int cmd_rlt(const Options& o, std::ostream& out) {
  const BaseSequence base = load_base(o.base);
  const BigInt start = parse_natural(o.start, "--start");
  std::vector<BigInt> values;
  for (std::size_t i = 0; i < o.count; ++i) values.push_back(rlt_by_runs(base, start + i));
  print_bfile_lines(out, start, values);
  return exit_ok;
}

int cmd_mu(const Options& o, std::ostream& out) {
  const SplitResult split = mu(parse_natural(o.n_text, "n"));
  out << to_string(split.a) << ' ' << to_string(split.b) << ' ' << split.m << '\n';
  return exit_ok;
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.corpus == !o.entry.empty()) throw Error(ErrorCode::usage, "give exactly one of --corpus or --entry");
  if (o.corpus) {
    const std::uint64_t bound = o.bound == 0 ? 256 : o.bound;
    const auto reports = check_lemma_corpus(bound);
    std::size_t surprises = 0;
    for (const auto& report : reports) {
      out << to_text(report) << '\n';
      if (!report.as_expected()) ++surprises;
    }
    out << reports.size() << " statements, " << surprises << " unexpected\n";
    return surprises == 0 ? exit_ok : exit_failed;
  }
  const RegistryEntry& entry = lookup(o.entry);
  std::optional<CoefficientVector> coefficients;
  if (!o.coeffs.empty()) coefficients = coefficients_arg(o.coeffs);
  const std::uint64_t bound = o.bound == 0 ? 4096 : o.bound;
  const auto report = check_triple_equivalence(entry, bound, o.variant, coefficients, o.oracle_bound);
  out << to_text(report) << '\n';
  return report.passed() ? exit_ok : exit_failed;
}

int cmd_conjecture(const Options& o, std::ostream& out) {
  const CoefficientVector c = coefficients_arg(o.coeffs);
  const std::uint64_t bound = o.bound == 0 ? 4096 : o.bound;
  const std::uint64_t sample = o.sample.value_or(std::min<std::uint64_t>(bound, 1024));
  if (bound > o.oracle_bound) throw Error(ErrorCode::usage, "--bound exceeds --oracle-bound");
  const ConjectureResult result = conjecture_rules(c, o.max_mod, sample, bound);
  out << "# coefficients " << to_string(c) << ", modulus 2^" << result.modulus_exp << ", validated for n <= "
      << bound << '\n';
  out << "a(0) = " << to_string(result.a0) << '\n';
  out << (result.even_rule_holds ? "" : "# fails: ") << "a(2n) = a(n)\n";
  for (const ResidueRule& rule : result.discovered_rules) out << to_text(rule) << '\n';
  for (std::uint64_t r : result.unresolved_residues) {
    out << "# no rule found for a(" << (std::uint64_t{1} << result.modulus_exp) << "n+" << r << ")\n";
  }
  return result.complete() ? exit_ok : exit_failed;
}

std::filesystem::path cache_dir_of(const Options& o) {
  return o.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(o.cache_dir);
}

int cmd_oeis_fetch(const Options& o, std::ostream& out) {
  const BFile bfile = fetch_bfile(o.anumber, cache_dir_of(o), o.offline);
  out << bfile.anumber << ' ' << bfile.entries.size() << " terms";
  if (const auto first = bfile.first_index()) out << " from index " << *first;
  out << '\n';
  return exit_ok;
}

int cmd_oeis_compare(const Options& o, std::ostream& out) {
  if (!is_valid_anumber(o.anumber)) throw Error(ErrorCode::usage, "malformed A-number '" + o.anumber + "'");
  const RegistryEntry& entry = lookup(o.entry);
  const BFile bfile = fetch_bfile(o.anumber, cache_dir_of(o), o.offline);
  std::vector<BigInt> computed;
  if (entry.oeis_sequence && *entry.oeis_sequence == o.anumber) {
    computed = entry.base_sequence().prefix(o.count);
  } else {
    computed = first_terms(entry.rules_variant(o.variant), o.count);
  }
  const Comparison comparison = compare(bfile, computed, o.offset);
  out << o.anumber << " vs " << entry.name << ": " << to_text(comparison) << '\n';
  return comparison.ok() ? exit_ok : exit_failed;
}

int cmd_triangle(const Options& o, std::ostream& out) {
  if (o.format == "pbm") out << "P1\n" << o.rows << ' ' << o.rows << '\n';
  for (std::uint64_t n = 0; n < o.rows; ++n) {
    const std::uint64_t width = o.format == "pbm" ? o.rows : n + 1;
    for (std::uint64_t k = 0; k < width; ++k) {
      if (k > 0) out << ' ';
      out << to_int(binom_parity(n, k));
    }
    out << '\n';
  }
  return exit_ok;
}

int cmd_catalog(std::ostream& out) {
  out << export_catalog();
  return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parity sums of binomial products and their run length transform rules", "runbinom"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--oracle-bound", o.oracle_bound, "Largest n the direct summation oracle accepts")
      ->check(CLI::Range(std::uint64_t{1}, max_oracle_bound));

  auto* parity = app.add_subcommand("parity", "C(n, k) mod 2");
  parity->add_option("n", o.n_text)->required();
  parity->add_option("k", o.k_text)->required();

  auto* f = app.add_subcommand("f", "F(n, k) = C(a1 n + a2 k, a3 n + a4 k) C(n, k) mod 2");
  f->add_option("--coeffs", o.coeffs, "a1,a2,a3,a4")->required();
  f->add_option("n", o.n_text)->required();
  f->add_option("k", o.k_text)->required();

  auto* seq = app.add_subcommand("seq", "Sequence terms as b-file lines");
  seq->add_option("--entry", o.entry, "Catalog name or A-number");
  seq->add_option("--coeffs", o.coeffs, "a1,a2,a3,a4");
  seq->add_option("--method", o.method)->check(CLI::IsMember({"oracle", "rules", "rlt"}));
  seq->add_option("--variant", o.variant, "Rule variant of the entry");
  seq->add_option("--count", o.count)->required();
  seq->add_option("--start", o.start, "First index (decimal, any length)");

  auto* rlt = app.add_subcommand("rlt", "Run length transform of a base sequence");
  rlt->add_option("--base", o.base, "Catalog name or file")->required();
  rlt->add_option("--count", o.count)->required();
  rlt->add_option("--start", o.start);

  auto* mu_cmd = app.add_subcommand("mu", "Split odd n at its highest 0-bit: prints a b m");
  mu_cmd->add_option("n", o.n_text)->required();

  auto* verify = app.add_subcommand("verify", "Check the identity corpus or a catalog entry");
  verify->add_flag("--corpus", o.corpus);
  verify->add_option("--entry", o.entry);
  verify->add_option("--variant", o.variant);
  verify->add_option("--coeffs", o.coeffs, "Alias coefficients to use for the entry");
  verify->add_option("--bound", o.bound);

  auto* conjecture = app.add_subcommand("conjecture", "Search for residue rules of a coefficient vector");
  conjecture->add_option("--coeffs", o.coeffs)->required();
  conjecture->add_option("--max-mod", o.max_mod, "Modulus exponent m (rules mod 2^m)")
      ->required()
      ->check(CLI::Range(1u, 12u));
  conjecture->add_option("--bound", o.bound, "Validation bound");
  conjecture->add_option("--sample", o.sample, "Indices used for fitting");

  auto* oeis = app.add_subcommand("oeis", "OEIS b-files");
  oeis->require_subcommand(1);
  auto* fetch = oeis->add_subcommand("fetch", "Fetch (or read from cache) a b-file");
  auto* compare_cmd = oeis->add_subcommand("compare", "Compare a b-file with computed terms");
  for (auto* sub : {fetch, compare_cmd}) {
    sub->add_option("--id", o.anumber)->required();
    sub->add_flag("--offline", o.offline);
    sub->add_option("--cache-dir", o.cache_dir);
  }
  compare_cmd->add_option("--entry", o.entry)->required();
  compare_cmd->add_option("--count", o.count)->required();
  compare_cmd->add_option("--offset", o.offset, "b-file index of the first computed term");
  compare_cmd->add_option("--variant", o.variant);

  auto* triangle = app.add_subcommand("triangle", "Pascal's triangle mod 2");
  triangle->add_option("--rows", o.rows)->required();
  triangle->add_option("--format", o.format)->check(CLI::IsMember({"ascii", "pbm"}));

  auto* catalog = app.add_subcommand("catalog", "Catalog as JSON lines");
  catalog->add_subcommand("export", "Print the catalog")->required(false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (parity->parsed()) return cmd_parity(o, out);
    if (f->parsed()) return cmd_f(o, out);
    if (seq->parsed()) return cmd_seq(o, out);
    if (rlt->parsed()) return cmd_rlt(o, out);
    if (mu_cmd->parsed()) return cmd_mu(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (conjecture->parsed()) return cmd_conjecture(o, out);
    if (fetch->parsed()) return cmd_oeis_fetch(o, out);
    if (compare_cmd->parsed()) return cmd_oeis_compare(o, out);
    if (triangle->parsed()) return cmd_triangle(o, out);
    if (catalog->parsed()) return cmd_catalog(out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_io;
  }
  return exit_usage;
}

}  // namespace runbinom::cli
