#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "runbinom/bigint.hpp"

namespace runbinom {

/// A parsed OEIS b-file. Indices are contiguous from the first entry.
struct BFile {
  std::string anumber;
  std::vector<std::pair<std::int64_t, BigInt>> entries;

  std::optional<std::int64_t> first_index() const {
    if (entries.empty()) return std::nullopt;
    return entries.front().first;
  }
};

/// Parses `<index> <value>` lines; '#' lines and blank lines are skipped.
/// Throws Error(parse_error) or Error(gap_error) naming the line.
BFile parse_bfile(std::string_view text, std::string anumber = {});

/// "A" followed by exactly six digits.
bool is_valid_anumber(std::string_view anumber);

/// https://oeis.org/A000045/b000045.txt for "A000045".
std::string bfile_url(std::string_view anumber);

/// Downloads a URL and returns the body. Throws Error(network_error).
using Fetcher = std::function<std::string(const std::string& url)>;

/// libcurl-backed fetcher.
std::string http_get(const std::string& url);

/// $RUNBINOM_OEIS_CACHE if set, otherwise ~/.cache/runbinom/oeis.
std::filesystem::path default_cache_dir();

/// Reads `<cache_dir>/<anumber>.txt`, or downloads and stores it verbatim when
/// not offline. Downloads are serialized at least one second apart.
/// Throws Error(usage) for a malformed A-number before touching disk or network.
BFile fetch_bfile(std::string_view anumber, const std::filesystem::path& cache_dir, bool offline,
                  const Fetcher& fetcher = http_get);

struct Mismatch {
  std::int64_t index;
  BigInt expected;
  BigInt computed;
};

struct Comparison {
  std::size_t matched = 0;
  /// Computed terms that fell past the end of the b-file.
  std::size_t unchecked = 0;
  std::optional<Mismatch> first_mismatch;

  bool ok() const { return !first_mismatch.has_value(); }
};

/// Aligns computed[i] with the b-file entry at index offset + i. The offset
/// defaults to the b-file's first index.
Comparison compare(const BFile& bfile, const std::vector<BigInt>& computed,
                   std::optional<std::int64_t> offset = std::nullopt);

std::string to_text(const Comparison& comparison);

}  // namespace runbinom
